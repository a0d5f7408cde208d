#include "mobnbody/verify.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mobnbody {

namespace {

std::size_t fit_window(const Trajectory& traj) {
  const std::size_t last = traj.size() - 1;
  return std::max<std::size_t>(1, last / 4);
}

// Least squares through the origin of w_i = mu t_i.
Complex fit_through_origin(const std::vector<double>& t, const std::vector<Complex>& w) {
  double tt = 0.0;
  Complex tw{0.0, 0.0};
  for (std::size_t i = 0; i < t.size(); ++i) {
    tt += t[i] * t[i];
    tw += t[i] * w[i];
  }
  if (tt == 0.0) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  return tw / tt;
}

}  // namespace

InvarianceReport check_orbit_invariance(const Trajectory& traj, SolutionClassTag tag) {
  if (traj.empty()) throw std::invalid_argument("cannot check an empty trajectory");
  InvarianceReport rep;
  rep.tag = tag;
  const auto z0 = traj.states.front().positions();
  const double R = traj.states.front().R();
  const double t0 = traj.t.front();

  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto predicted = residual_mobius_orbit(tag, z0, traj.t[i] - t0, R);
    const auto& bodies = traj.states[i].bodies();
    for (std::size_t k = 0; k < bodies.size(); ++k) {
      const double dev = std::abs(bodies[k].z - predicted[k]);
      if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.time_of_max = traj.t[i];
      }
    }
  }

  if (traj.size() < 2) return rep;
  const std::size_t window = fit_window(traj);
  const bool linear = tag == SolutionClassTag::MobiusParabolic;
  std::size_t counted = 0;
  for (std::size_t k = 0; k < z0.size(); ++k) {
    std::vector<double> t;
    std::vector<Complex> w;
    bool defined = linear || std::abs(z0[k]) > 0.0;
    double unwrap = 0.0;
    double prev_arg = 0.0;
    for (std::size_t i = 1; i <= window && defined; ++i) {
      const Complex zk = traj.states[i].body(k).z;
      t.push_back(traj.t[i] - t0);
      if (linear) {
        w.push_back(zk - z0[k]);
        continue;
      }
      if (zk == Complex(0.0, 0.0)) {
        defined = false;
        break;
      }
      const Complex q = zk / z0[k];
      double arg = std::arg(q);
      // Keep the phase continuous between consecutive samples.
      while (arg + unwrap - prev_arg > std::numbers::pi) unwrap -= 2.0 * std::numbers::pi;
      while (arg + unwrap - prev_arg < -std::numbers::pi) unwrap += 2.0 * std::numbers::pi;
      prev_arg = arg + unwrap;
      w.emplace_back(std::log(std::abs(q)), prev_arg);
    }
    if (!defined) {
      rep.body_rates.emplace_back(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const Complex mu = fit_through_origin(t, w);
    rep.body_rates.push_back(mu);
    rep.rate += mu;
    ++counted;
  }
  if (counted > 0) rep.rate /= static_cast<double>(counted);
  return rep;
}

DriftReport residual_drift(const Trajectory& traj, SolutionClassTag tag) {
  DriftReport rep;
  rep.tag = tag;
  rep.min_separation = std::numeric_limits<double>::infinity();
  rep.min_antipodal_margin = std::numeric_limits<double>::infinity();
  if (traj.empty()) return rep;

  const EnergyValue e0 = energy(traj.states.front());
  const double scale = e0.kinetic + std::abs(e0.force_function);
  const double denom = std::abs(e0.total) >= 1e-8 * scale ? std::abs(e0.total) : scale;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Configuration& c = traj.states[i];
    const double e = energy(c).total;
    rep.energy.push_back(e);
    if (denom > 0.0) rep.energy_relative_drift = std::max(rep.energy_relative_drift, std::abs(e - e0.total) / denom);
    const double res = residual(tag, c, traj.t[i]).max_norm;
    rep.residual_max_norm.push_back(res);
    // A residual that starts at roundoff level is measured against 1e-12 instead.
    const double base = std::max(rep.residual_max_norm.front(), 1e-12);
    if (!rep.residual_exceeds_10x_at && i > 0 && res > 10.0 * base) {
      rep.residual_exceeds_10x_at = traj.t[i];
    }
    const auto margins = pair_margins(c.positions(), c.R());
    rep.min_separation = std::min(rep.min_separation, margins.min_separation);
    rep.min_antipodal_margin = std::min(rep.min_antipodal_margin, margins.min_antipodal_margin);
  }
  return rep;
}

double period_from_rate(Complex mu) noexcept {
  const double w = std::abs(mu.imag());
  return w == 0.0 ? std::numeric_limits<double>::infinity() : 2.0 * std::numbers::pi / w;
}

}  // namespace mobnbody
