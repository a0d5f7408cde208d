#pragma once

// Algebraic condition systems characterising each Mobius solution class, the
// infinitesimal velocity laws that go with them, and the homothetic scaling
// function phi(t) of the totally geodesic class.

#include <string_view>
#include <vector>

#include "mobnbody/dynamics.hpp"

namespace mobnbody {

enum class SolutionClassTag {
  MobiusElliptic,
  MobiusHyperbolic,
  MobiusParabolic,
  AsymptoticLoxodromic,
  HomographicLoxodromic,
  TotallyGeodesic,
};

// "elliptic", "hyperbolic", "parabolic", "asymptotic-loxodromic",
// "homographic-loxodromic", "totally-geodesic".
std::string_view to_string(SolutionClassTag tag) noexcept;
SolutionClassTag parse_solution_class(std::string_view name);

struct ResidualReport {
  SolutionClassTag tag = SolutionClassTag::MobiusElliptic;
  double t = 0.0;
  std::vector<Complex> per_body;
  double max_norm = 0.0;
  double l2_norm = 0.0;
};

// Left-hand side of the condition system for a body at z (no mass factor).
//   elliptic      2R^6 (|z|^2 - R^2) z / (R^2+|z|^2)^4
//   hyperbolic    2R^6 (R^2 - |z|^2) z / (R^2+|z|^2)^4
//   parabolic    -4R^6 conj(z)       / (R^2+|z|^2)^4
//   asymptotic    4i R^6 (R^2 - |z|^2) z / (R^2+|z|^2)^4
//   homographic   (3i-1)^2 R^6 (R^2 - |z|^2) z / (2 (R^2+|z|^2)^4)
//   geodesic      0
Complex condition_lhs(SolutionClassTag tag, Complex z, double R);

// Per-body LHS - RHS where the right-hand side is interaction_sum(), except
// for the homographic system whose right-hand side carries a minus sign
// and for the totally geodesic one whose right-hand side is dU/dzbar_k.
ResidualReport residual(SolutionClassTag tag, const Configuration& c, double t = 0.0);

// Velocity prescribed by the tag's infinitesimal law at position z:
//   elliptic z/(2i), hyperbolic -z/2, parabolic -1/2,
//   asymptotic -(1+i) z/2, homographic (3i-1) z/4.
// Throws std::invalid_argument for TotallyGeodesic.
Complex velocity_law(SolutionClassTag tag, Complex z);

// Overwrites all velocities with velocity_law(); positions are kept.
Configuration set_velocities(SolutionClassTag tag, const Configuration& c);

// Totally geodesic initial velocities z_k phidot_k(0) = -z_k/|z_k| from the
// closed-form phi of each body (a body at the origin stays at rest).
Configuration set_geodesic_velocities(const Configuration& c);

// Complex rate mu of the exponential flow z(t) = e^{mu t} z(0) generated by
// the tag's velocity law. Throws for parabolic and totally geodesic tags.
Complex flow_rate(SolutionClassTag tag);

// phi(t) = (R^2/r0^2) tan(c2 r0 t + c1).
struct PhiParams {
  double r0 = 1.0;
  double R = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

// The particular constants with phi(0) = 1:
// c1 = arctan(r0^2/R^2), c2 = -R^2/(r0^4 + R^4).
PhiParams closed_form_phi_params(double r0, double R);

// Throw DomainError when c2 r0 t + c1 leaves (-pi/2, pi/2).
double phi(double t, const PhiParams& p);
double phi_dot(double t, const PhiParams& p);
double phi_ddot(double t, const PhiParams& p);

// phidot / (R^2 + phi^2 r0^2), a first integral of the meridian geodesic equation.
double phi_first_integral(double t, const PhiParams& p);
// phiddot - 2 r0^2 phi phidot^2 / (R^2 + phi^2 r0^2).
double phi_ode_residual(double t, const PhiParams& p);

// Exact meridian geodesic scaling with phi(0) = 1 and phidot(0) = phidot0:
// (R/r0) tan(arctan(r0/R) + R r0 phidot0 t / (R^2 + r0^2)).
double meridian_phi(double t, double r0, double R, double phidot0);

// Closed-form position of every body at time t under the tag's flow, starting
// from z0: e^{mu t} z0 for the exponential laws, z0 - t/2 for parabolic and
// phi_k(t) z0_k (closed-form phi) for totally geodesic.
std::vector<Complex> residual_mobius_orbit(SolutionClassTag tag, const std::vector<Complex>& z0, double t,
                                           double R = 1.0);

}  // namespace mobnbody
