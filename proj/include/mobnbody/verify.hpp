#pragma once

// Trajectory-level checks: distance from the closed-form Mobius orbit,
// fitted flow rates, condition-residual persistence and energy bookkeeping.

#include <optional>
#include <vector>

#include "mobnbody/conditions.hpp"

namespace mobnbody {

struct InvarianceReport {
  SolutionClassTag tag = SolutionClassTag::MobiusElliptic;
  double max_deviation = 0.0;  // max over samples and bodies of |z_k(t) - predicted_k(t)|
  double time_of_max = 0.0;
  // Exponential fit z_k(t) ~ e^{mu t} z_k(0) for each body (NaN for a body at
  // the origin), or the linear drift v in z_k(t) ~ z_k(0) + v t for parabolic.
  std::vector<Complex> body_rates;
  Complex rate{0.0, 0.0};  // mean over bodies with a defined fit
};

// Compares every sample against residual_mobius_orbit() started from the
// first sample and fits the rates by least squares on the first quarter of
// the samples (at least one sample after t = 0).
InvarianceReport check_orbit_invariance(const Trajectory& traj, SolutionClassTag tag);

struct DriftReport {
  SolutionClassTag tag = SolutionClassTag::MobiusElliptic;
  std::vector<double> energy;
  // max_t |E(t) - E(0)| / |E(0)|, with K(0) + |U(0)| as the denominator when
  // |E(0)| is below 1e-8 of it.
  double energy_relative_drift = 0.0;
  std::vector<double> residual_max_norm;
  // First time the residual exceeds 10x its initial value (floored at 1e-12).
  std::optional<double> residual_exceeds_10x_at;
  double min_separation = 0.0;
  double min_antipodal_margin = 0.0;
};

DriftReport residual_drift(const Trajectory& traj, SolutionClassTag tag);

// 2 pi / |Im mu|; infinity for a purely real rate.
double period_from_rate(Complex mu) noexcept;

}  // namespace mobnbody
