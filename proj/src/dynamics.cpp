#include "mobnbody/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mobnbody/errors.hpp"

namespace mobnbody {

namespace {

void check_pair(Complex zk, Complex zj, const CurvatureRadius& R, std::size_t k, std::size_t j) {
  const double tol = kSingularTolerance * R.value();
  if (is_collision(zk, zj, tol)) throw SingularPair(SingularKind::Collision, k, j);
  if (is_antipodal(zk, zj, R, tol)) throw SingularPair(SingularKind::Antipodal, k, j);
}

}  // namespace

Configuration::Configuration(CurvatureRadius R, std::vector<Body> bodies) : R_(R), bodies_(std::move(bodies)) {
  if (bodies_.empty()) throw std::invalid_argument("a configuration needs at least one body");
  for (std::size_t k = 0; k < bodies_.size(); ++k) {
    const Body& b = bodies_[k];
    if (!(std::isfinite(b.mass) && b.mass > 0.0)) {
      throw std::invalid_argument("mass of body " + std::to_string(k) + " must be finite and positive");
    }
    if (!std::isfinite(std::abs(b.z)) || !std::isfinite(std::abs(b.v))) {
      throw std::invalid_argument("body " + std::to_string(k) + " has a non-finite position or velocity");
    }
  }
  for (std::size_t k = 0; k < bodies_.size(); ++k) {
    for (std::size_t j = k + 1; j < bodies_.size(); ++j) check_pair(bodies_[k].z, bodies_[j].z, R_, k, j);
  }
}

std::vector<Complex> Configuration::positions() const {
  std::vector<Complex> out;
  out.reserve(bodies_.size());
  for (const auto& b : bodies_) out.push_back(b.z);
  return out;
}

std::vector<Complex> Configuration::velocities() const {
  std::vector<Complex> out;
  out.reserve(bodies_.size());
  for (const auto& b : bodies_) out.push_back(b.v);
  return out;
}

std::vector<double> Configuration::masses() const {
  std::vector<double> out;
  out.reserve(bodies_.size());
  for (const auto& b : bodies_) out.push_back(b.mass);
  return out;
}

Configuration Configuration::with_velocities(std::span<const Complex> v) const {
  if (v.size() != bodies_.size()) throw std::invalid_argument("velocity count does not match body count");
  Configuration out = *this;
  for (std::size_t k = 0; k < v.size(); ++k) out.bodies_[k].v = v[k];
  return out;
}

Configuration Configuration::with_positions(std::span<const Complex> z) const {
  if (z.size() != bodies_.size()) throw std::invalid_argument("position count does not match body count");
  std::vector<Body> bodies = bodies_;
  for (std::size_t k = 0; k < z.size(); ++k) bodies[k].z = z[k];
  return Configuration(R_, std::move(bodies));
}

Complex interaction_sum(std::span<const double> masses, std::span<const Complex> z, double R, std::size_t k) {
  const CurvatureRadius radius(R);
  const double R2 = R * R;
  const Complex zk = z[k];
  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j == k) continue;
    const Complex zj = z[j];
    check_pair(zk, zj, radius, k, j);
    const Complex margin = R2 + std::conj(zj) * zk;
    const Complex diff = zj - zk;
    const double dist = std::abs(diff);
    const double am = std::abs(margin);
    const double wj = std::norm(zj) + R2;
    sum += masses[j] * wj * wj * margin * diff / (dist * dist * dist * am * am * am);
  }
  return sum;
}

Complex interaction_sum(const Configuration& c, std::size_t k) {
  const auto m = c.masses();
  const auto z = c.positions();
  return interaction_sum(m, z, c.R(), k);
}

double force_function(const Configuration& c) {
  double u = 0.0;
  const auto& b = c.bodies();
  for (std::size_t k = 0; k < b.size(); ++k) {
    for (std::size_t j = k + 1; j < b.size(); ++j) {
      u += b[k].mass * b[j].mass * cot_of_distance(b[k].z, b[j].z, c.radius());
    }
  }
  return u / c.R();
}

Complex grad_conjugate(const Configuration& c, std::size_t k) {
  const double R2 = c.R() * c.R();
  const Body& bk = c.body(k);
  return bk.mass * (R2 + std::norm(bk.z)) / (4.0 * R2) * interaction_sum(c, k);
}

namespace {

// zddot_k for all bodies. The mass of body k cancels against the m_k in the
// gradient, leaving (R^2+|z_k|^2)^3/(8R^6) times the interaction sum.
void accelerations(std::span<const double> m, std::span<const Complex> z, std::span<const Complex> v, double R,
                   std::span<Complex> out) {
  const double R2 = R * R;
  const double R6 = R2 * R2 * R2;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double s = R2 + std::norm(z[k]);
    const Complex geodesic = 2.0 * std::conj(z[k]) * v[k] * v[k] / s;
    out[k] = geodesic + (s * s * s / (8.0 * R6)) * interaction_sum(m, z, R, k);
  }
}

}  // namespace

std::vector<Complex> eom_rhs(const Configuration& c) {
  const auto m = c.masses();
  const auto z = c.positions();
  const auto v = c.velocities();
  std::vector<Complex> out(c.size());
  accelerations(m, z, v, c.R(), out);
  return out;
}

EnergyValue energy(const Configuration& c) {
  EnergyValue e;
  for (const auto& b : c.bodies()) e.kinetic += 0.5 * b.mass * conformal_factor(b.z, c.R()) * std::norm(b.v);
  e.force_function = force_function(c);
  e.total = e.kinetic - e.force_function;
  return e;
}

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::SingularApproach: return "singular-approach";
    case Termination::StiffnessFailure: return "stiffness-failure";
    case Termination::StepLimit: return "step-limit";
  }
  return "unknown";
}

PairMargins pair_margins(std::span<const Complex> z, double R) noexcept {
  PairMargins out{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k < z.size(); ++k) {
    for (std::size_t j = k + 1; j < z.size(); ++j) {
      out.min_separation = std::min(out.min_separation, std::abs(z[j] - z[k]));
      out.min_antipodal_margin = std::min(out.min_antipodal_margin, antipodal_margin(z[k], z[j], R));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with FSAL and standard error-per-step control.

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

using State = std::vector<double>;

class FirstOrderSystem {
 public:
  FirstOrderSystem(std::vector<double> masses, double R)
      : masses_(std::move(masses)), R_(R), z_(masses_.size()), v_(masses_.size()), a_(masses_.size()) {}

  std::size_t dimension() const noexcept { return 4 * masses_.size(); }

  void operator()(const State& y, State& dy) {
    unpack(y);
    accelerations(masses_, z_, v_, R_, a_);
    for (std::size_t k = 0; k < masses_.size(); ++k) {
      dy[4 * k + 0] = v_[k].real();
      dy[4 * k + 1] = v_[k].imag();
      dy[4 * k + 2] = a_[k].real();
      dy[4 * k + 3] = a_[k].imag();
    }
    ++evaluations;
  }

  const std::vector<Complex>& positions(const State& y) {
    unpack(y);
    return z_;
  }

  std::size_t evaluations = 0;

 private:
  void unpack(const State& y) {
    for (std::size_t k = 0; k < masses_.size(); ++k) {
      z_[k] = {y[4 * k + 0], y[4 * k + 1]};
      v_[k] = {y[4 * k + 2], y[4 * k + 3]};
    }
  }

  std::vector<double> masses_;
  double R_;
  std::vector<Complex> z_, v_, a_;
};

State pack(const Configuration& c) {
  State y(4 * c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Body& b = c.body(k);
    y[4 * k + 0] = b.z.real();
    y[4 * k + 1] = b.z.imag();
    y[4 * k + 2] = b.v.real();
    y[4 * k + 3] = b.v.imag();
  }
  return y;
}

Configuration unpack(const Configuration& like, const State& y) {
  std::vector<Body> bodies = like.bodies();
  for (std::size_t k = 0; k < bodies.size(); ++k) {
    bodies[k].z = {y[4 * k + 0], y[4 * k + 1]};
    bodies[k].v = {y[4 * k + 2], y[4 * k + 3]};
  }
  return Configuration(like.radius(), std::move(bodies));
}

double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
  double acc = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = err[i] / sc;
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

double initial_step(FirstOrderSystem& f, const State& y0, const State& f0, double atol, double rtol, double span) {
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < y0.size(); ++i) {
    const double sc = atol + rtol * std::abs(y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  const double n = static_cast<double>(y0.size());
  d0 = std::sqrt(d0 / n);
  d1 = std::sqrt(d1 / n);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, std::abs(span));
  State y1(y0.size()), f1(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) y1[i] = y0[i] + h0 * f0[i];
  f(y1, f1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < y0.size(); ++i) {
    const double sc = atol + rtol * std::abs(y0[i]);
    const double q = (f1[i] - f0[i]) / sc;
    d2 += q * q;
  }
  d2 = std::sqrt(d2 / n) / h0;
  const double dm = std::max(d1, d2);
  const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5.0);
  return std::min({100.0 * h0, h1, std::abs(span)});
}

}  // namespace

Trajectory integrate(const Configuration& c0, double t_end, const IntegratorOptions& options) {
  if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0)) {
    throw std::invalid_argument("integrator tolerances must be positive");
  }
  if (!std::isfinite(t_end)) throw std::invalid_argument("t_end must be finite");

  Trajectory traj;
  traj.t.push_back(0.0);
  traj.states.push_back(c0);
  if (t_end == 0.0) return traj;

  const double R = c0.R();
  const double dir = t_end > 0.0 ? 1.0 : -1.0;
  FirstOrderSystem f(c0.masses(), R);
  const std::size_t dim = f.dimension();

  auto guard_tripped = [&](const State& y) {
    const auto margins = pair_margins(f.positions(y), R);
    return margins.min_separation < options.guard_distance * R ||
           margins.min_antipodal_margin < options.guard_antipodal * R * R;
  };

  State y = pack(c0);
  State k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), ytmp(dim), ynew(dim), err(dim);
  double t = 0.0;
  try {
    f(y, k1);
  } catch (const SingularPair& e) {
    traj.termination = Termination::SingularApproach;
    traj.detail = e.what();
    return traj;
  }

  double h = dir * initial_step(f, y, k1, options.abs_tol, options.rel_tol, t_end);
  traj.stats.min_step = std::numeric_limits<double>::infinity();

  std::size_t next_sample = 1;
  auto sample_time = [&](std::size_t i) {
    return i == options.samples ? t_end : t_end * static_cast<double>(i) / static_cast<double>(options.samples);
  };

  std::size_t steps = 0;
  while (dir * (t_end - t) > 0.0) {
    if (steps++ >= options.max_steps) {
      traj.termination = Termination::StepLimit;
      traj.detail = "step limit reached at t = " + std::to_string(t);
      break;
    }
    double target = t_end;
    if (options.samples > 0) target = sample_time(next_sample);
    double step = h;
    bool lands = false;
    if (dir * (t + step - target) >= 0.0) {
      step = target - t;
      lands = true;
    }
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(t))) {
      traj.termination = Termination::StiffnessFailure;
      traj.detail = "step size underflow at t = " + std::to_string(t);
      break;
    }

    try {
      for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + step * a21 * k1[i];
      f(ytmp, k2);
      for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + step * (a31 * k1[i] + a32 * k2[i]);
      f(ytmp, k3);
      for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + step * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      f(ytmp, k4);
      for (std::size_t i = 0; i < dim; ++i)
        ytmp[i] = y[i] + step * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      f(ytmp, k5);
      for (std::size_t i = 0; i < dim; ++i)
        ytmp[i] = y[i] + step * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      f(ytmp, k6);
      for (std::size_t i = 0; i < dim; ++i)
        ynew[i] = y[i] + step * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      f(ynew, k7);
    } catch (const SingularPair&) {
      // A stage landed in the singular set: shrink and retry.
      ++traj.stats.rejected;
      h = 0.25 * step;
      continue;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      err[i] = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }
    const double en = error_norm(err, y, ynew, options.abs_tol, options.rel_tol);
    if (!std::isfinite(en)) {
      ++traj.stats.rejected;
      h = 0.25 * step;
      continue;
    }
    const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    if (en > 1.0) {
      ++traj.stats.rejected;
      h = step * std::min(1.0, factor);
      continue;
    }

    // Accepted.
    ++traj.stats.accepted;
    traj.stats.min_step = std::min(traj.stats.min_step, std::abs(step));
    traj.stats.max_step = std::max(traj.stats.max_step, std::abs(step));
    t = lands ? target : t + step;
    y.swap(ynew);
    k1.swap(k7);
    // Keep the controller's proposal when the step was only clipped to hit an output time.
    if (!lands || std::abs(step * factor) > std::abs(h)) h = step * factor;

    if (guard_tripped(y)) {
      traj.termination = Termination::SingularApproach;
      traj.detail = "guard threshold crossed at t = " + std::to_string(t);
      break;
    }
    if (options.samples == 0 || lands) {
      traj.t.push_back(t);
      traj.states.push_back(unpack(c0, y));
      if (options.samples > 0) ++next_sample;
    }
  }
  if (traj.stats.accepted == 0) traj.stats.min_step = 0.0;
  traj.stats.rhs_evaluations = f.evaluations;
  return traj;
}

}  // namespace mobnbody
