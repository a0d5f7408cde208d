#pragma once

// Cotangent force function, its conjugate gradient, the second-order
// equations of motion in intrinsic complex coordinates, and an adaptive
// Dormand-Prince 5(4) integrator over configurations.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobnbody/geom.hpp"

namespace mobnbody {

struct Body {
  double mass = 1.0;
  Complex z{0.0, 0.0};
  Complex v{0.0, 0.0};
};

// n >= 1 bodies with positive masses on the plane of curvature radius R.
// The constructor rejects nonpositive masses, non-finite coordinates and any
// pair inside the collision or antipodal set (tolerance kSingularTolerance * R).
class Configuration {
 public:
  Configuration(CurvatureRadius R, std::vector<Body> bodies);

  const CurvatureRadius& radius() const noexcept { return R_; }
  double R() const noexcept { return R_.value(); }
  std::size_t size() const noexcept { return bodies_.size(); }
  const std::vector<Body>& bodies() const noexcept { return bodies_; }
  const Body& body(std::size_t k) const { return bodies_.at(k); }

  std::vector<Complex> positions() const;
  std::vector<Complex> velocities() const;
  std::vector<double> masses() const;

  // Velocities are unconstrained, so these do not revalidate.
  void set_velocity(std::size_t k, Complex v) { bodies_.at(k).v = v; }
  Configuration with_velocities(std::span<const Complex> v) const;
  // Revalidates the singular sets.
  Configuration with_positions(std::span<const Complex> z) const;

 private:
  CurvatureRadius R_;
  std::vector<Body> bodies_;
};

// Sum over j != k of m_j (|z_j|^2+R^2)^2 (R^2 + conj(z_j) z_k)(z_j - z_k)
//   / (|z_j - z_k|^3 |R^2 + conj(z_j) z_k|^3).
// This is the right-hand side shared by all the Mobius condition systems.
// Throws SingularPair naming the offending pair.
Complex interaction_sum(std::span<const double> masses, std::span<const Complex> z, double R, std::size_t k);
Complex interaction_sum(const Configuration& c, std::size_t k);

// U_R = (1/R) sum_{k<j} m_k m_j cot(d_kj / R).
double force_function(const Configuration& c);

// dU_R/d conj(z_k) (Wirtinger derivative, d/dzbar = (d/dx + i d/dy)/2).
Complex grad_conjugate(const Configuration& c, std::size_t k);

// Accelerations zddot_k = 2 conj(z_k) zdot_k^2/(R^2+|z_k|^2) + 2/(m_k lambda(z_k)) dU/dzbar_k.
std::vector<Complex> eom_rhs(const Configuration& c);

struct EnergyValue {
  double kinetic = 0.0;
  double force_function = 0.0;
  double total = 0.0;  // kinetic - force_function
};

EnergyValue energy(const Configuration& c);

enum class Termination { Completed, SingularApproach, StiffnessFailure, StepLimit };

std::string_view to_string(Termination t) noexcept;

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  std::size_t max_steps = 1'000'000;
  // Output times are t0 + i (t_end - t0)/samples; 0 records every accepted step.
  std::size_t samples = 0;
  // Stop when a pair comes closer than guard_distance * R in the plane or
  // the antipodal margin drops below guard_antipodal * R^2.
  double guard_distance = 1e-6;
  double guard_antipodal = 1e-6;
};

struct IntegratorStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  double min_step = 0.0;
  double max_step = 0.0;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Configuration> states;
  IntegratorStats stats;
  Termination termination = Termination::Completed;
  std::string detail;

  std::size_t size() const noexcept { return t.size(); }
  bool empty() const noexcept { return t.empty(); }
};

// Integrates from t = 0 to t_end (which may be negative for backward
// integration). The trajectory always starts with c0; on SingularApproach,
// StiffnessFailure or StepLimit it ends at the last accepted state.
Trajectory integrate(const Configuration& c0, double t_end, const IntegratorOptions& options = {});

// Smallest plane separation |z_j - z_k| and smallest antipodal margin
// |R^2 + conj(z_j) z_k| over all pairs (infinity for n = 1).
struct PairMargins {
  double min_separation;
  double min_antipodal_margin;
};
PairMargins pair_margins(std::span<const Complex> z, double R) noexcept;

}  // namespace mobnbody
