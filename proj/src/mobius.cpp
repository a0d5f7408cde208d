#include "mobnbody/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mobnbody/errors.hpp"

namespace mobnbody {

namespace {

constexpr Complex kI{0.0, 1.0};

bool near_zero(Complex z, double scale) noexcept { return std::abs(z) <= 1e-14 * scale; }

}  // namespace

MobiusMatrix::MobiusMatrix(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  // Relative to the size of the cancelling products, so diag(e^-t, e^t) stays valid.
  const double scale = std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c);
  if (!(scale > 0.0) || std::abs(det) <= 1e-14 * scale || !std::isfinite(std::abs(det))) {
    throw std::invalid_argument("Mobius matrix must be nonsingular");
  }
  const Complex s = 1.0 / std::sqrt(det);
  a_ = a * s;
  b_ = b * s;
  c_ = c * s;
  d_ = d * s;
}

MobiusMatrix operator*(const MobiusMatrix& x, const MobiusMatrix& y) {
  return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
          x.c_ * y.b_ + x.d_ * y.d_};
}

double MobiusMatrix::projective_distance(const MobiusMatrix& o) const noexcept {
  auto dist = [&](double sign) {
    return std::max({std::abs(a_ - sign * o.a_), std::abs(b_ - sign * o.b_), std::abs(c_ - sign * o.c_),
                     std::abs(d_ - sign * o.d_)});
  };
  return std::min(dist(1.0), dist(-1.0));
}

std::string_view to_string(MobiusClass cls) noexcept {
  switch (cls) {
    case MobiusClass::Elliptic: return "elliptic";
    case MobiusClass::Hyperbolic: return "hyperbolic";
    case MobiusClass::Parabolic: return "parabolic";
    case MobiusClass::Loxodromic: return "loxodromic";
  }
  return "unknown";
}

PlanePoint apply(const MobiusMatrix& A, const PlanePoint& z) {
  const double scale = std::max({std::abs(A.a()), std::abs(A.b()), std::abs(A.c()), std::abs(A.d())});
  if (z.is_infinite()) {
    if (near_zero(A.c(), scale)) return PlanePoint::infinity();
    return PlanePoint(A.a() / A.c());
  }
  const Complex w = z.value();
  const Complex den = A.c() * w + A.d();
  if (den == Complex(0.0, 0.0)) return PlanePoint::infinity();
  const Complex q = (A.a() * w + A.b()) / den;
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) return PlanePoint::infinity();
  return PlanePoint(q);
}

MobiusClass classify(const MobiusMatrix& A, double tol) {
  const Complex t = A.trace();
  const Complex t2 = t * t;
  if (std::abs(t2.imag()) > tol) return MobiusClass::Loxodromic;
  const double x = t2.real();
  if (std::abs(x - 4.0) <= tol) return MobiusClass::Parabolic;
  if (x > 4.0) return MobiusClass::Hyperbolic;
  if (x >= -tol) return MobiusClass::Elliptic;
  return MobiusClass::Loxodromic;
}

FixedPointSet fixed_points(const MobiusMatrix& A, double tol) {
  if (A.projective_distance(MobiusMatrix::identity()) <= 1e-14) {
    throw DomainError("the identity transformation fixes every point");
  }
  const Complex a = A.a(), b = A.b(), c = A.c(), d = A.d();
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  const Complex disc = A.trace() * A.trace() - 4.0;
  const bool repeated = std::abs(disc) <= tol;

  if (near_zero(c, scale)) {
    // Upper triangular: infinity is fixed, the other root solves (d - a) z = b.
    if (repeated || near_zero(d - a, scale)) return {{PlanePoint::infinity()}};
    return {{PlanePoint::infinity(), PlanePoint(b / (d - a))}};
  }
  const Complex B = d - a;
  if (repeated) return {{PlanePoint(-B / (2.0 * c))}};
  // Cancellation-free quadratic formula for c z^2 + B z - b = 0.
  Complex root = std::sqrt(disc);
  if ((std::conj(B) * root).real() < 0.0) root = -root;
  const Complex q = -0.5 * (B + root);
  return {{PlanePoint(q / c), PlanePoint(-b / q)}};
}

std::string_view to_string(SubgroupKind kind) noexcept {
  switch (kind) {
    case SubgroupKind::EllipticG: return "elliptic";
    case SubgroupKind::HyperbolicG: return "hyperbolic";
    case SubgroupKind::ParabolicG: return "parabolic";
    case SubgroupKind::AsymptoticLox: return "asymptotic-loxodromic";
    case SubgroupKind::HomographicLox: return "homographic-loxodromic";
  }
  return "unknown";
}

SubgroupKind parse_subgroup_kind(std::string_view name) {
  for (auto kind : {SubgroupKind::EllipticG, SubgroupKind::HyperbolicG, SubgroupKind::ParabolicG,
                    SubgroupKind::AsymptoticLox, SubgroupKind::HomographicLox}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown subgroup kind: " + std::string(name));
}

MobiusMatrix subgroup_element(SubgroupKind kind, double t, const PhiEvaluator& phi) {
  auto diagonal = [](Complex half_log) { return MobiusMatrix(std::exp(half_log), 0.0, 0.0, std::exp(-half_log)); };
  switch (kind) {
    case SubgroupKind::EllipticG: return diagonal(0.5 * t * kI);
    case SubgroupKind::HyperbolicG: return diagonal(Complex(0.5 * t, 0.0));
    case SubgroupKind::ParabolicG: return MobiusMatrix(1.0, t, 0.0, 1.0);
    case SubgroupKind::AsymptoticLox: return diagonal(0.5 * t * Complex(1.0, 1.0));
    case SubgroupKind::HomographicLox: {
      if (!phi) throw DomainError("homographic loxodromic set needs a phi evaluator");
      const double scale = phi(t);
      if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("phi(t) must be finite and positive, got " + std::to_string(scale));
      }
      return diagonal(0.5 * (std::log(scale) + t * kI));
    }
  }
  throw std::invalid_argument("unknown subgroup kind");
}

std::vector<PlanePoint> orbit_samples(SubgroupKind kind, Complex z0, const std::vector<double>& t_grid,
                                      const PhiEvaluator& phi) {
  const PlanePoint start(z0);
  std::vector<PlanePoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back(apply(subgroup_element(kind, t, phi), start));
  return out;
}

}  // namespace mobnbody
