#include "mobnbody/geom.hpp"

#include <cmath>
#include <stdexcept>

#include "mobnbody/errors.hpp"

namespace mobnbody {

CurvatureRadius::CurvatureRadius(double radius) : radius_(radius) {
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw std::invalid_argument("curvature radius must be finite and positive");
  }
}

PlanePoint::PlanePoint(Complex z) : z_(z) {
  if (!(std::isfinite(z.real()) && std::isfinite(z.imag()))) {
    throw std::invalid_argument("plane point must be finite; use PlanePoint::infinity()");
  }
}

PlanePoint PlanePoint::infinity() noexcept {
  PlanePoint p;
  p.infinite_ = true;
  return p;
}

Complex PlanePoint::value() const {
  if (infinite_) throw DomainError("the point at infinity has no finite coordinate");
  return z_;
}

double conformal_factor(Complex z, double R) noexcept {
  const double s = R * R + std::norm(z);
  return 4.0 * R * R * R * R / (s * s);
}

double conformal_factor(const PlanePoint& z, const CurvatureRadius& R) {
  if (z.is_infinite()) throw DomainError("conformal factor vanishes at infinity");
  return conformal_factor(z.value(), R.value());
}

double antipodal_margin(Complex zk, Complex zj, double R) noexcept {
  return std::abs(R * R + std::conj(zj) * zk);
}

namespace {

// Numerator of the cotangent relation: 4R^2 Re(zk conj zj) + (|zk|^2-R^2)(|zj|^2-R^2).
double cot_numerator(Complex zk, Complex zj, double R) noexcept {
  const double R2 = R * R;
  return 4.0 * R2 * (zk * std::conj(zj)).real() + (std::norm(zk) - R2) * (std::norm(zj) - R2);
}

// Square root of the discriminant, 2R |zj - zk| |R^2 + conj(zj) zk|.
double cot_denominator(Complex zk, Complex zj, double R) noexcept {
  return 2.0 * R * std::abs(zj - zk) * antipodal_margin(zk, zj, R);
}

}  // namespace

double cot_of_distance(Complex zk, Complex zj, const CurvatureRadius& R) {
  return cot_of_distance(zk, zj, R, kSingularTolerance * R.value());
}

double cot_of_distance(Complex zk, Complex zj, const CurvatureRadius& R, double tol) {
  if (is_collision(zk, zj, tol)) throw SingularPair(SingularKind::Collision, "cot_of_distance");
  if (is_antipodal(zk, zj, R, tol)) throw SingularPair(SingularKind::Antipodal, "cot_of_distance");
  return cot_numerator(zk, zj, R.value()) / cot_denominator(zk, zj, R.value());
}

double geodesic_distance(const PlanePoint& a, const PlanePoint& b, const CurvatureRadius& R) {
  if (a.is_infinite() || b.is_infinite()) {
    return great_circle_distance(lift_to_sphere(a, R), lift_to_sphere(b, R), R);
  }
  const Complex zk = a.value();
  const Complex zj = b.value();
  // atan2 inverts the cot relation on (0, pi) and resolves the 0/0 limits:
  // coincident points give 0 and antipodal points give pi.
  const double angle = std::atan2(cot_denominator(zk, zj, R.value()), cot_numerator(zk, zj, R.value()));
  return R.value() * angle;
}

SpherePoint lift_to_sphere(const PlanePoint& z, const CurvatureRadius& R) {
  const double r = R.value();
  if (z.is_infinite()) return {0.0, 0.0, r};
  const Complex v = z.value();
  const double n = std::norm(v);
  const double s = r * r + n;
  return {2.0 * r * r * v.real() / s, 2.0 * r * r * v.imag() / s, r * (n - r * r) / s};
}

PlanePoint project_to_plane(const SpherePoint& p, const CurvatureRadius& R) {
  const double r = R.value();
  const double rho2 = p.x * p.x + p.y * p.y;
  if (p.w > 0.0) {
    // R/(R - w) = R(R + w)/(x^2 + y^2) avoids cancellation near the north pole.
    if (rho2 == 0.0) return PlanePoint::infinity();
    const double scale = r * (r + p.w) / rho2;
    return PlanePoint(Complex(p.x * scale, p.y * scale));
  }
  const double scale = r / (r - p.w);
  return PlanePoint(Complex(p.x * scale, p.y * scale));
}

double great_circle_distance(const SpherePoint& p, const SpherePoint& q, const CurvatureRadius& R) {
  const double cx = p.y * q.w - p.w * q.y;
  const double cy = p.w * q.x - p.x * q.w;
  const double cz = p.x * q.y - p.y * q.x;
  const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
  const double dot = p.x * q.x + p.y * q.y + p.w * q.w;
  return R.value() * std::atan2(cross, dot);
}

bool is_collision(const PlanePoint& zk, const PlanePoint& zj, double tol) {
  if (zk.is_infinite() || zj.is_infinite()) return zk.is_infinite() && zj.is_infinite();
  return std::abs(zk.value() - zj.value()) < tol;
}

bool is_antipodal(const PlanePoint& zk, const PlanePoint& zj, const CurvatureRadius& R, double tol) {
  if (zj.is_infinite()) return !zk.is_infinite() && std::abs(zk.value()) < tol;
  const Complex w = zj.value();
  if (w == Complex(0.0, 0.0)) return zk.is_infinite();
  if (zk.is_infinite()) return false;
  return std::abs(zk.value() + (R.squared() / std::norm(w)) * w) < tol;
}

}  // namespace mobnbody
