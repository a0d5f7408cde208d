#include "mobnbody/conditions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mobnbody/errors.hpp"

namespace mobnbody {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr SolutionClassTag kAllTags[] = {
    SolutionClassTag::MobiusElliptic,       SolutionClassTag::MobiusHyperbolic,
    SolutionClassTag::MobiusParabolic,      SolutionClassTag::AsymptoticLoxodromic,
    SolutionClassTag::HomographicLoxodromic, SolutionClassTag::TotallyGeodesic,
};

}  // namespace

std::string_view to_string(SolutionClassTag tag) noexcept {
  switch (tag) {
    case SolutionClassTag::MobiusElliptic: return "elliptic";
    case SolutionClassTag::MobiusHyperbolic: return "hyperbolic";
    case SolutionClassTag::MobiusParabolic: return "parabolic";
    case SolutionClassTag::AsymptoticLoxodromic: return "asymptotic-loxodromic";
    case SolutionClassTag::HomographicLoxodromic: return "homographic-loxodromic";
    case SolutionClassTag::TotallyGeodesic: return "totally-geodesic";
  }
  return "unknown";
}

SolutionClassTag parse_solution_class(std::string_view name) {
  for (auto tag : kAllTags) {
    if (to_string(tag) == name) return tag;
  }
  throw std::invalid_argument("unknown solution class: " + std::string(name));
}

Complex condition_lhs(SolutionClassTag tag, Complex z, double R) {
  const double R2 = R * R;
  const double R6 = R2 * R2 * R2;
  const double r2 = std::norm(z);
  const double s = R2 + r2;
  const double s4 = (s * s) * (s * s);
  switch (tag) {
    case SolutionClassTag::MobiusElliptic: return 2.0 * R6 * (r2 - R2) * z / s4;
    case SolutionClassTag::MobiusHyperbolic: return 2.0 * R6 * (R2 - r2) * z / s4;
    case SolutionClassTag::MobiusParabolic: return -4.0 * R6 * std::conj(z) / s4;
    case SolutionClassTag::AsymptoticLoxodromic: return 4.0 * kI * R6 * (R2 - r2) * z / s4;
    case SolutionClassTag::HomographicLoxodromic: {
      const Complex k = (3.0 * kI - 1.0) * (3.0 * kI - 1.0);
      return k * R6 * (R2 - r2) * z / (2.0 * s4);
    }
    case SolutionClassTag::TotallyGeodesic: return {0.0, 0.0};
  }
  throw std::invalid_argument("unknown solution class");
}

ResidualReport residual(SolutionClassTag tag, const Configuration& c, double t) {
  ResidualReport rep;
  rep.tag = tag;
  rep.t = t;
  rep.per_body.reserve(c.size());
  double sq = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Complex lhs = condition_lhs(tag, c.body(k).z, c.R());
    Complex rhs;
    switch (tag) {
      case SolutionClassTag::HomographicLoxodromic: rhs = -interaction_sum(c, k); break;
      case SolutionClassTag::TotallyGeodesic: rhs = grad_conjugate(c, k); break;
      default: rhs = interaction_sum(c, k); break;
    }
    const Complex r = lhs - rhs;
    rep.per_body.push_back(r);
    rep.max_norm = std::max(rep.max_norm, std::abs(r));
    sq += std::norm(r);
  }
  rep.l2_norm = std::sqrt(sq);
  return rep;
}

Complex velocity_law(SolutionClassTag tag, Complex z) {
  switch (tag) {
    case SolutionClassTag::MobiusElliptic: return z / (2.0 * kI);
    case SolutionClassTag::MobiusHyperbolic: return -0.5 * z;
    case SolutionClassTag::MobiusParabolic: return {-0.5, 0.0};
    case SolutionClassTag::AsymptoticLoxodromic: return -0.5 * Complex(1.0, 1.0) * z;
    case SolutionClassTag::HomographicLoxodromic: return 0.25 * (3.0 * kI - 1.0) * z;
    case SolutionClassTag::TotallyGeodesic: break;
  }
  throw std::invalid_argument("totally geodesic velocities come from phi; use set_geodesic_velocities");
}

Configuration set_velocities(SolutionClassTag tag, const Configuration& c) {
  std::vector<Complex> v;
  v.reserve(c.size());
  for (const auto& b : c.bodies()) v.push_back(velocity_law(tag, b.z));
  return c.with_velocities(v);
}

Configuration set_geodesic_velocities(const Configuration& c) {
  std::vector<Complex> v;
  v.reserve(c.size());
  for (const auto& b : c.bodies()) {
    const double r0 = std::abs(b.z);
    if (r0 == 0.0) {
      v.emplace_back(0.0, 0.0);
      continue;
    }
    v.push_back(phi_dot(0.0, closed_form_phi_params(r0, c.R())) * b.z);
  }
  return c.with_velocities(v);
}

Complex flow_rate(SolutionClassTag tag) {
  switch (tag) {
    case SolutionClassTag::MobiusElliptic: return -0.5 * kI;
    case SolutionClassTag::MobiusHyperbolic: return {-0.5, 0.0};
    case SolutionClassTag::AsymptoticLoxodromic: return -0.5 * Complex(1.0, 1.0);
    case SolutionClassTag::HomographicLoxodromic: return 0.25 * (3.0 * kI - 1.0);
    default: break;
  }
  throw std::invalid_argument("no exponential flow for " + std::string(to_string(tag)));
}

PhiParams closed_form_phi_params(double r0, double R) {
  if (!(r0 > 0.0) || !(R > 0.0)) throw std::invalid_argument("phi needs r0 > 0 and R > 0");
  const double x = r0 * r0 / (R * R);
  return {r0, R, std::atan(x), -R * R / (r0 * r0 * r0 * r0 + R * R * R * R)};
}

namespace {

// x = r0^2/R^2, so phi = tan(arg)/x.
double ratio(const PhiParams& p) { return p.r0 * p.r0 / (p.R * p.R); }

void check_branch(double t, const PhiParams& p) {
  const double arg = p.c2 * p.r0 * t + p.c1;
  if (!(std::abs(arg) < 0.5 * std::numbers::pi)) {
    throw DomainError("phi(t) crosses a pole of tan at t = " + std::to_string(t));
  }
}

}  // namespace

double phi(double t, const PhiParams& p) {
  check_branch(t, p);
  const double x = ratio(p);
  // Addition formula; tan(arctan x) is taken as x itself so phi(0) = 1 exactly.
  const double t1 = p.c1 == std::atan(x) ? x : std::tan(p.c1);
  const double tau = std::tan(p.c2 * p.r0 * t);
  return (t1 + tau) / (1.0 - t1 * tau) / x;
}

double phi_dot(double t, const PhiParams& p) {
  const double x = ratio(p);
  const double tn = x * phi(t, p);
  return p.c2 * p.r0 * (1.0 + tn * tn) / x;
}

double phi_ddot(double t, const PhiParams& p) {
  const double x = ratio(p);
  return 2.0 * p.c2 * p.r0 * x * phi(t, p) * phi_dot(t, p);
}

double phi_first_integral(double t, const PhiParams& p) {
  const double f = phi(t, p);
  return phi_dot(t, p) / (p.R * p.R + f * f * p.r0 * p.r0);
}

double phi_ode_residual(double t, const PhiParams& p) {
  const double f = phi(t, p);
  const double fd = phi_dot(t, p);
  return phi_ddot(t, p) - 2.0 * p.r0 * p.r0 * f * fd * fd / (p.R * p.R + f * f * p.r0 * p.r0);
}

double meridian_phi(double t, double r0, double R, double phidot0) {
  const double omega = R * r0 * phidot0 / (R * R + r0 * r0);
  const double arg = std::atan(r0 / R) + omega * t;
  if (!(std::abs(arg) < 0.5 * std::numbers::pi)) {
    throw DomainError("meridian geodesic reaches infinity before t = " + std::to_string(t));
  }
  // Addition formula around arctan(x) so that t = 0 gives x / x = 1 exactly.
  const double x = r0 / R;
  const double tau = std::tan(omega * t);
  return (x + tau) / ((1.0 - x * tau) * x);
}

std::vector<Complex> residual_mobius_orbit(SolutionClassTag tag, const std::vector<Complex>& z0, double t,
                                           double R) {
  std::vector<Complex> out;
  out.reserve(z0.size());
  if (tag == SolutionClassTag::MobiusParabolic) {
    for (auto z : z0) out.push_back(z - 0.5 * t);
    return out;
  }
  if (tag == SolutionClassTag::TotallyGeodesic) {
    for (auto z : z0) {
      const double r0 = std::abs(z);
      out.push_back(r0 == 0.0 ? z : phi(t, closed_form_phi_params(r0, R)) * z);
    }
    return out;
  }
  const Complex g = std::exp(flow_rate(tag) * t);
  for (auto z : z0) out.push_back(g * z);
  return out;
}

}  // namespace mobnbody
