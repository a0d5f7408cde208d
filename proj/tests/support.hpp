#pragma once

// Independent oracles and random generators shared by the test binaries.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mobnbody/dynamics.hpp"

namespace testsupport {

using mobnbody::Complex;

struct Vec3 {
  double x, y, w;
};

// Sphere point at colatitude 2 atan(|z|/R) from the south pole, longitude arg z.
inline Vec3 sphere_oracle(Complex z, double R) {
  const double psi = 2.0 * std::atan(std::abs(z) / R);
  const double phi = std::arg(z);
  return {R * std::sin(psi) * std::cos(phi), R * std::sin(psi) * std::sin(phi), -R * std::cos(psi)};
}

// Chord-based great-circle distance: 2R asin(|p - q| / 2R).
inline double chord_distance(const Vec3& p, const Vec3& q, double R) {
  const double dx = p.x - q.x, dy = p.y - q.y, dw = p.w - q.w;
  const double chord = std::sqrt(dx * dx + dy * dy + dw * dw);
  return 2.0 * R * std::asin(std::min(1.0, chord / (2.0 * R)));
}

inline Complex random_point(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

// Random configuration whose pairs keep separation and antipodal margin above
// `margin` (in units of R and R^2).
inline mobnbody::Configuration random_configuration(std::mt19937_64& rng, std::size_t n, double R,
                                                    double spread = 1.5, double margin = 0.2) {
  std::uniform_real_distribution<double> mass(0.2, 2.0);
  std::uniform_real_distribution<double> vel(-0.5, 0.5);
  for (;;) {
    std::vector<mobnbody::Body> bodies;
    for (std::size_t k = 0; k < n; ++k) {
      bodies.push_back({mass(rng), random_point(rng, spread * R), {vel(rng), vel(rng)}});
    }
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      for (std::size_t j = k + 1; j < n && ok; ++j) {
        ok = std::abs(bodies[k].z - bodies[j].z) > margin * R &&
             mobnbody::antipodal_margin(bodies[k].z, bodies[j].z, R) > margin * R * R;
      }
    }
    if (ok) return mobnbody::Configuration(mobnbody::CurvatureRadius(R), std::move(bodies));
  }
}

// Central-difference Wirtinger derivative dU/dzbar_k = (dU/dx + i dU/dy)/2.
inline Complex fd_grad_conjugate(const mobnbody::Configuration& c, std::size_t k, double h = 1e-6) {
  auto shifted = [&](Complex dz) {
    auto z = c.positions();
    z[k] += dz;
    return mobnbody::force_function(c.with_positions(z));
  };
  const double dx = (shifted({h, 0.0}) - shifted({-h, 0.0})) / (2.0 * h);
  const double dy = (shifted({0.0, h}) - shifted({0.0, -h})) / (2.0 * h);
  return 0.5 * Complex(dx, dy);
}

}  // namespace testsupport
