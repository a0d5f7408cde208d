#pragma once

// SL(2,C) matrices acting on the extended plane as fractional linear maps,
// trace classification, fixed points and the one-parameter families used to
// define the Mobius solution classes.

#include <functional>
#include <string_view>
#include <vector>

#include "mobnbody/geom.hpp"

namespace mobnbody {

class MobiusMatrix {
 public:
  // Rescales by 1/sqrt(ad - bc) so that the stored matrix has unit
  // determinant. The square-root branch is irrelevant since A and -A induce
  // the same map. Throws std::invalid_argument for (numerically) singular input.
  MobiusMatrix(Complex a, Complex b, Complex c, Complex d);

  static MobiusMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }

  Complex trace() const noexcept { return a_ + d_; }
  Complex determinant() const noexcept { return a_ * d_ - b_ * c_; }
  MobiusMatrix inverse() const { return {d_, -b_, -c_, a_}; }
  MobiusMatrix operator-() const { return {-a_, -b_, -c_, -d_}; }

  friend MobiusMatrix operator*(const MobiusMatrix& x, const MobiusMatrix& y);

  // Entrywise distance to `other` up to the sign ambiguity of PSL(2,C).
  double projective_distance(const MobiusMatrix& other) const noexcept;

 private:
  Complex a_, b_, c_, d_;
};

enum class MobiusClass { Elliptic, Hyperbolic, Parabolic, Loxodromic };

std::string_view to_string(MobiusClass cls) noexcept;

inline constexpr double kTraceTolerance = 1e-10;

// (az + b)/(cz + d) on the Riemann sphere: -d/c goes to infinity and infinity
// goes to a/c (or stays at infinity when c = 0).
PlanePoint apply(const MobiusMatrix& A, const PlanePoint& z);

// Elliptic for tr^2 in [0, 4), parabolic for tr^2 = 4, hyperbolic for
// tr^2 > 4, loxodromic for tr^2 < 0 or non-real. `tol` is used both for the
// reality test and for the parabolic band |tr^2 - 4| <= tol.
MobiusClass classify(const MobiusMatrix& A, double tol = kTraceTolerance);

struct FixedPointSet {
  std::vector<PlanePoint> points;  // one or two entries; infinity allowed
};

// Roots of c z^2 + (d - a) z - b = 0 on the Riemann sphere. A single point is
// returned exactly when |tr^2 - 4| <= tol, matching classify().
// Throws DomainError for the identity, which fixes every point.
FixedPointSet fixed_points(const MobiusMatrix& A, double tol = kTraceTolerance);

enum class SubgroupKind { EllipticG, HyperbolicG, ParabolicG, AsymptoticLox, HomographicLox };

std::string_view to_string(SubgroupKind kind) noexcept;
// Accepts "elliptic", "hyperbolic", "parabolic", "asymptotic-loxodromic",
// "homographic-loxodromic". Throws std::invalid_argument otherwise.
SubgroupKind parse_subgroup_kind(std::string_view name);

// Real scaling function phi(t) > 0 used by the homographic loxodromic set.
using PhiEvaluator = std::function<double(double)>;

// Element of the one-parameter family at parameter t:
//   EllipticG      z -> e^{it} z
//   HyperbolicG    z -> e^{t} z
//   ParabolicG     z -> z + t
//   AsymptoticLox  z -> e^{t(1+i)} z
//   HomographicLox z -> phi(t) e^{it} z   (needs `phi`; throws DomainError without it)
MobiusMatrix subgroup_element(SubgroupKind kind, double t, const PhiEvaluator& phi = {});

std::vector<PlanePoint> orbit_samples(SubgroupKind kind, Complex z0, const std::vector<double>& t_grid,
                                      const PhiEvaluator& phi = {});

}  // namespace mobnbody
