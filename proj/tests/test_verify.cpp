#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mobnbody/families.hpp"
#include "mobnbody/verify.hpp"
#include "support.hpp"

using namespace mobnbody;

namespace {

constexpr double kPi = std::numbers::pi;

Trajectory run(const Configuration& c, double t_end, int samples, double tol = 1e-11) {
  IntegratorOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol;
  opt.samples = samples;
  return integrate(c, t_end, opt);
}

TEST(Period, FromRate) {
  EXPECT_NEAR(period_from_rate(flow_rate(SolutionClassTag::MobiusElliptic)), 4.0 * kPi, 1e-14);
  EXPECT_TRUE(std::isinf(period_from_rate(flow_rate(SolutionClassTag::MobiusHyperbolic))));
  EXPECT_NEAR(period_from_rate(Complex(-0.25, 0.75)), 8.0 * kPi / 3.0, 1e-14);
}

TEST(EllipticPair, ClosesAfterOnePeriod) {
  const auto b = build_family({SolutionClassTag::MobiusElliptic, FamilyShape::TwoBodyAntipodal, 0.5, 0.0, 0.0, 1.0});
  const double T = period_from_rate(flow_rate(SolutionClassTag::MobiusElliptic));
  const auto traj = run(b.config, T, 200);
  ASSERT_EQ(traj.termination, Termination::Completed);
  for (const auto& s : traj.states) {
    for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(std::abs(s.body(k).z), 0.5, 1e-8);
  }
  const auto& last = traj.states.back();
  for (std::size_t k = 0; k < 2; ++k) EXPECT_LT(std::abs(last.body(k).z - b.config.body(k).z), 1e-6);
  const auto inv = check_orbit_invariance(traj, SolutionClassTag::MobiusElliptic);
  EXPECT_LT(inv.max_deviation, 1e-7);
  EXPECT_LT(std::abs(inv.rate - Complex(0.0, -0.5)), 1e-6);
  const auto drift = residual_drift(traj, SolutionClassTag::MobiusElliptic);
  EXPECT_LT(drift.energy_relative_drift, 1e-9);
  EXPECT_FALSE(drift.residual_exceeds_10x_at.has_value());
  EXPECT_EQ(drift.energy.size(), traj.states.size());
}

TEST(EllipticEquilateral, FollowsTheRotation) {
  const auto b =
      build_family({SolutionClassTag::MobiusElliptic, FamilyShape::ThreeBodyEquilateral, 0.7, 0.0, 0.0, 1.0});
  const auto traj = run(b.config, 2.0, 50);
  const auto inv = check_orbit_invariance(traj, SolutionClassTag::MobiusElliptic);
  EXPECT_LT(inv.max_deviation, 1e-7);
  for (auto r : inv.body_rates) EXPECT_LT(std::abs(r - Complex(0.0, -0.5)), 1e-6);
}

// The system holds at t = 0 and the acceleration matches the flow there, but
// the bodies then decelerate and turn back: the deviation is third order in t.
TEST(HyperbolicEulerian, LeavesTheFlowAtThirdOrder) {
  const auto b = build_family({SolutionClassTag::MobiusHyperbolic, FamilyShape::ThreeBodyEulerian, 1.5, 0.0, 5.0, 1.0});
  EXPECT_LT(b.report.max_norm, 1e-12);
  const auto d1 = check_orbit_invariance(run(b.config, 0.05, 10), SolutionClassTag::MobiusHyperbolic).max_deviation;
  const auto d2 = check_orbit_invariance(run(b.config, 0.1, 10), SolutionClassTag::MobiusHyperbolic).max_deviation;
  EXPECT_NEAR(std::log2(d2 / d1), 3.0, 0.3);
  const auto traj = run(b.config, 0.5, 20);
  ASSERT_EQ(traj.termination, Termination::Completed);
  EXPECT_LT(std::abs(traj.states[5].body(0).z), 1.5);
  EXPECT_GT(traj.states.back().body(0).v.real(), 0.0);
  const auto drift = residual_drift(traj, SolutionClassTag::MobiusHyperbolic);
  ASSERT_TRUE(drift.residual_exceeds_10x_at.has_value());
  EXPECT_LT(*drift.residual_exceeds_10x_at, 0.1);
}

TEST(AsymptoticEquilateral, SpiralsInward) {
  const auto b =
      build_family({SolutionClassTag::AsymptoticLoxodromic, FamilyShape::ThreeBodyEquilateral, 1.0, 0.4, 0.0, 1.0});
  const auto traj = run(b.config, 0.2, 20);
  ASSERT_EQ(traj.termination, Termination::Completed);
  double prev = 1e9;
  for (const auto& s : traj.states) {
    EXPECT_LT(std::abs(s.body(1).z), prev);
    prev = std::abs(s.body(1).z);
  }
}

TEST(Parabolic, DeviationGrowsCubically) {
  const auto b = build_family({SolutionClassTag::MobiusParabolic, FamilyShape::TwoBodyAntipodal, 0.0, 1e-3, 0.0, 1.0});
  const auto d1 = check_orbit_invariance(run(b.config, 0.02, 10, 1e-13), SolutionClassTag::MobiusParabolic).max_deviation;
  const auto d2 = check_orbit_invariance(run(b.config, 0.04, 10, 1e-13), SolutionClassTag::MobiusParabolic).max_deviation;
  EXPECT_GT(d1, 1e-8);
  EXPECT_NEAR(std::log2(d2 / d1), 3.0, 0.3);
}

TEST(Parabolic, TranslationWinsForLargeRadius) {
  const double R = 20.0;
  const auto b =
      build_family({SolutionClassTag::MobiusParabolic, FamilyShape::TwoBodyAntipodal, 0.0, 1e-3 * R, 0.0, R});
  const auto inv = check_orbit_invariance(run(b.config, 0.2, 20), SolutionClassTag::MobiusParabolic);
  EXPECT_LT(inv.max_deviation, 1e-4);
  EXPECT_LT(std::abs(inv.rate + 0.5), 1e-3);
}

TEST(Integration, TighterToleranceConverges) {
  std::mt19937_64 rng(91);
  const auto c = testsupport::random_configuration(rng, 3, 1.0);
  const auto a = run(c, 1.0, 4, 1e-8);
  const auto b = run(c, 1.0, 4, 1e-11);
  const auto ref = run(c, 1.0, 4, 1e-13);
  double ea = 0.0, eb = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    ea = std::max(ea, std::abs(a.states.back().body(k).z - ref.states.back().body(k).z));
    eb = std::max(eb, std::abs(b.states.back().body(k).z - ref.states.back().body(k).z));
  }
  EXPECT_LT(eb, ea);
  EXPECT_LT(eb, 1e-8);
}

TEST(Drift, ResidualGrowthIsFlagged) {
  std::mt19937_64 rng(92);
  const auto c = testsupport::random_configuration(rng, 3, 1.0);
  const auto traj = run(c, 1.0, 20);
  const auto d = residual_drift(traj, SolutionClassTag::MobiusElliptic);
  EXPECT_EQ(d.residual_max_norm.size(), traj.states.size());
  EXPECT_GT(d.min_separation, 0.0);
  EXPECT_GT(d.min_antipodal_margin, 0.0);
  EXPECT_LT(d.energy_relative_drift, 1e-8);
}

}  // namespace
