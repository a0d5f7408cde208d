#pragma once

// Intrinsic geometry of the spherical plane: the complex plane with the
// conformal metric 4R^4 dz dzbar / (R^2 + |z|^2)^2, which is the round sphere
// of radius R seen through stereographic projection from the north pole.

#include <complex>

namespace mobnbody {

using Complex = std::complex<double>;

class CurvatureRadius {
 public:
  // Throws std::invalid_argument unless R is finite and positive.
  explicit CurvatureRadius(double radius);

  double value() const noexcept { return radius_; }
  double squared() const noexcept { return radius_ * radius_; }
  double curvature() const noexcept { return 1.0 / (radius_ * radius_); }

 private:
  double radius_;
};

// A point of the extended plane. Infinity (the north pole) is an explicit
// state rather than a huge modulus.
class PlanePoint {
 public:
  PlanePoint() = default;
  PlanePoint(Complex z);  // NOLINT(google-explicit-constructor)
  PlanePoint(double re, double im) : PlanePoint(Complex(re, im)) {}

  static PlanePoint infinity() noexcept;

  bool is_infinite() const noexcept { return infinite_; }
  // Throws DomainError for the point at infinity.
  Complex value() const;

  friend bool operator==(const PlanePoint& a, const PlanePoint& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.z_ == b.z_);
  }

 private:
  Complex z_{0.0, 0.0};
  bool infinite_ = false;
};

struct SpherePoint {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
};

// Default tolerance used by the collision and antipodal predicates, in units of R.
inline constexpr double kSingularTolerance = 1e-9;

double conformal_factor(Complex z, double R) noexcept;
// 4R^4/(R^2+|z|^2)^2. Throws DomainError at infinity where the factor degenerates.
double conformal_factor(const PlanePoint& z, const CurvatureRadius& R);

// cot(d/R) for the geodesic distance d between two finite points.
// Throws SingularPair when the pair is a collision or antipodal within
// `tol` (absolute, defaults to kSingularTolerance * R).
double cot_of_distance(Complex zk, Complex zj, const CurvatureRadius& R);
double cot_of_distance(Complex zk, Complex zj, const CurvatureRadius& R, double tol);

// Geodesic distance in [0, pi R]. Coincident points are at distance 0 and
// antipodal points at pi R; the point at infinity is handled as the north pole.
double geodesic_distance(const PlanePoint& a, const PlanePoint& b, const CurvatureRadius& R);

// Inverse stereographic projection onto the sphere of radius R centred at
// the origin; z = 0 maps to the south pole (0, 0, -R) and infinity to the north pole.
SpherePoint lift_to_sphere(const PlanePoint& z, const CurvatureRadius& R);
PlanePoint project_to_plane(const SpherePoint& p, const CurvatureRadius& R);

// Great-circle distance between two points of the embedded sphere.
double great_circle_distance(const SpherePoint& p, const SpherePoint& q, const CurvatureRadius& R);

bool is_collision(const PlanePoint& zk, const PlanePoint& zj, double tol);
// zk is the antipode -R^2 zj / |zj|^2 of zj. The origin and infinity are antipodal.
bool is_antipodal(const PlanePoint& zk, const PlanePoint& zj, const CurvatureRadius& R, double tol);

// |R^2 + conj(zj) zk|, which vanishes exactly on the antipodal set.
double antipodal_margin(Complex zk, Complex zj, double R) noexcept;

}  // namespace mobnbody
