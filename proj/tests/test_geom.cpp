#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mobnbody/errors.hpp"
#include "mobnbody/geom.hpp"
#include "support.hpp"

using namespace mobnbody;
using testsupport::chord_distance;
using testsupport::sphere_oracle;

namespace {

constexpr double kPi = std::numbers::pi;

TEST(ConformalFactor, KnownValues) {
  EXPECT_DOUBLE_EQ(conformal_factor(Complex(0.0, 0.0), 1.0), 4.0);
  EXPECT_DOUBLE_EQ(conformal_factor(Complex(0.0, 3.0), 3.0), 1.0);
  EXPECT_DOUBLE_EQ(conformal_factor(Complex(2.0, 0.0), 1.0), 4.0 / 25.0);
}

TEST(ConformalFactor, RejectsInfinity) {
  EXPECT_THROW(conformal_factor(PlanePoint::infinity(), CurvatureRadius(1.0)), DomainError);
}

TEST(ConformalFactor, PositiveAndDecaying) {
  double prev = conformal_factor(Complex(0.0, 0.0), 2.0);
  for (double r = 0.5; r < 1e6; r *= 2.0) {
    const double f = conformal_factor(Complex(r, 0.0), 2.0);
    EXPECT_GT(f, 0.0);
    EXPECT_LT(f, prev);
    prev = f;
  }
  EXPECT_LT(prev, 1e-20);
}

TEST(CurvatureRadius, Validation) {
  EXPECT_THROW(CurvatureRadius(0.0), std::invalid_argument);
  EXPECT_THROW(CurvatureRadius(-1.0), std::invalid_argument);
  EXPECT_THROW(CurvatureRadius(std::nan("")), std::invalid_argument);
  EXPECT_DOUBLE_EQ(CurvatureRadius(2.0).curvature(), 0.25);
}

TEST(PlanePoint, InfinityIsDistinct) {
  EXPECT_TRUE(PlanePoint::infinity().is_infinite());
  EXPECT_FALSE(PlanePoint(1e300, 0.0).is_infinite());
  EXPECT_FALSE(PlanePoint::infinity() == PlanePoint(0.0, 0.0));
  EXPECT_THROW(PlanePoint::infinity().value(), DomainError);
}

TEST(CotOfDistance, OriginToRealPoint) {
  for (double R : {0.5, 1.0, 3.0}) {
    for (double r : {0.1, 0.7, 2.5, 9.0}) {
      const double expected = (R * R - r * r) / (2.0 * R * r);
      EXPECT_NEAR(cot_of_distance(0.0, r, CurvatureRadius(R)), expected, 1e-13 * std::max(1.0, std::abs(expected)));
    }
  }
  EXPECT_NEAR(cot_of_distance(0.0, Complex(0.0, 2.0), CurvatureRadius(2.0)), 0.0, 1e-15);
}

TEST(CotOfDistance, MatchesSphereOracle) {
  std::mt19937_64 rng(11);
  const double R = 1.3;
  for (int i = 0; i < 200; ++i) {
    const Complex a = testsupport::random_point(rng, 3.0);
    const Complex b = testsupport::random_point(rng, 3.0);
    const double d = chord_distance(sphere_oracle(a, R), sphere_oracle(b, R), R);
    if (d < 1e-3 || d > kPi * R - 1e-3) continue;
    const double expected = 1.0 / std::tan(d / R);
    EXPECT_NEAR(cot_of_distance(a, b, CurvatureRadius(R)), expected, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(CotOfDistance, SingularPairsAreNamed) {
  const CurvatureRadius R(1.0);
  try {
    cot_of_distance(Complex(1.0, 1.0), Complex(1.0, 1.0), R);
    FAIL() << "collision not detected";
  } catch (const SingularPair& e) {
    EXPECT_EQ(e.kind(), SingularKind::Collision);
  }
  try {
    cot_of_distance(Complex(-1.0, 0.0), Complex(1.0, 0.0), R);
    FAIL() << "antipodal pair not detected";
  } catch (const SingularPair& e) {
    EXPECT_EQ(e.kind(), SingularKind::Antipodal);
  }
}

TEST(GeodesicDistance, Conventions) {
  const CurvatureRadius R(1.0);
  EXPECT_EQ(geodesic_distance(Complex(0.3, 0.4), Complex(0.3, 0.4), R), 0.0);
  EXPECT_NEAR(geodesic_distance(Complex(1.0, 0.0), Complex(-1.0, 0.0), R), kPi, 1e-15);
  EXPECT_NEAR(geodesic_distance(Complex{}, PlanePoint::infinity(), R), kPi, 1e-15);
  EXPECT_NEAR(geodesic_distance(Complex{}, Complex(0.0, 1.0), R), kPi / 2.0, 1e-15);
}

TEST(GeodesicDistance, Symmetric) {
  std::mt19937_64 rng(5);
  const CurvatureRadius R(2.0);
  for (int i = 0; i < 100; ++i) {
    const Complex a = testsupport::random_point(rng, 4.0);
    const Complex b = testsupport::random_point(rng, 4.0);
    EXPECT_DOUBLE_EQ(geodesic_distance(a, b, R), geodesic_distance(b, a, R));
  }
}

TEST(GeodesicDistance, AgreesWithSphereOracle) {
  std::mt19937_64 rng(7);
  for (double R : {0.5, 1.0, 4.0}) {
    for (int i = 0; i < 1000; ++i) {
      const Complex a = testsupport::random_point(rng, 5.0 * R);
      const Complex b = testsupport::random_point(rng, 5.0 * R);
      const double oracle = chord_distance(sphere_oracle(a, R), sphere_oracle(b, R), R);
      if (oracle > 0.99 * kPi * R) continue;  // asin loses accuracy near antipodes
      EXPECT_NEAR(geodesic_distance(a, b, CurvatureRadius(R)), oracle, 1e-10 * oracle);
    }
  }
}

TEST(GeodesicDistance, RadialClosedForm) {
  const double R = 1.7;
  for (int i = 1; i <= 50; ++i) {
    const Complex z = std::polar(0.2 * i, 0.37 * i);
    EXPECT_NEAR(geodesic_distance(Complex{}, z, CurvatureRadius(R)), 2.0 * R * std::atan(std::abs(z) / R), 1e-13);
  }
}

TEST(GeodesicDistance, TriangleInequality) {
  std::mt19937_64 rng(9);
  const CurvatureRadius R(1.0);
  for (int i = 0; i < 1000; ++i) {
    const Complex a = testsupport::random_point(rng, 4.0);
    const Complex b = testsupport::random_point(rng, 4.0);
    const Complex c = testsupport::random_point(rng, 4.0);
    EXPECT_LE(geodesic_distance(a, c, R), geodesic_distance(a, b, R) + geodesic_distance(b, c, R) + 1e-12);
  }
}

TEST(SphereLift, Poles) {
  const CurvatureRadius R(2.0);
  const auto s = lift_to_sphere(Complex{}, R);
  EXPECT_DOUBLE_EQ(s.x, 0.0);
  EXPECT_DOUBLE_EQ(s.w, -2.0);
  const auto n = lift_to_sphere(PlanePoint::infinity(), R);
  EXPECT_DOUBLE_EQ(n.w, 2.0);
  EXPECT_TRUE(project_to_plane(n, R).is_infinite());
  EXPECT_NEAR(lift_to_sphere(Complex(0.0, 2.0), R).w, 0.0, 1e-15);
}

TEST(SphereLift, MatchesOracleAndStaysOnSphere) {
  std::mt19937_64 rng(13);
  const double R = 1.5;
  for (int i = 0; i < 500; ++i) {
    const Complex z = testsupport::random_point(rng, 10.0);
    const auto p = lift_to_sphere(z, CurvatureRadius(R));
    const auto q = sphere_oracle(z, R);
    EXPECT_NEAR(p.x, q.x, 1e-13);
    EXPECT_NEAR(p.y, q.y, 1e-13);
    EXPECT_NEAR(p.w, q.w, 1e-13);
    EXPECT_NEAR(p.x * p.x + p.y * p.y + p.w * p.w, R * R, 1e-12);
  }
}

TEST(SphereLift, RoundTrip) {
  std::mt19937_64 rng(17);
  for (double R : {0.3, 1.0, 5.0}) {
    const CurvatureRadius radius(R);
    for (int i = 0; i < 1000; ++i) {
      const Complex z = std::polar(std::uniform_real_distribution<double>(0.0, 10.0 * R)(rng),
                                   std::uniform_real_distribution<double>(-kPi, kPi)(rng));
      const Complex back = project_to_plane(lift_to_sphere(z, radius), radius).value();
      EXPECT_LT(std::abs(back - z), 1e-12 * std::max(1.0, R));
    }
  }
}

TEST(GreatCircle, MatchesChord) {
  const CurvatureRadius R(1.0);
  const auto a = lift_to_sphere(Complex(0.2, 0.1), R);
  const auto b = lift_to_sphere(Complex(-0.7, 1.4), R);
  const Complex za(0.2, 0.1), zb(-0.7, 1.4);
  EXPECT_NEAR(great_circle_distance(a, b, R), chord_distance(sphere_oracle(za, 1.0), sphere_oracle(zb, 1.0), 1.0),
              1e-14);
}

TEST(SingularPredicates, Examples) {
  const CurvatureRadius R(1.0);
  EXPECT_TRUE(is_collision(Complex(1.0, 1.0), Complex(1.0, 1.0), 1e-9));
  EXPECT_TRUE(is_antipodal(Complex(-1.0, 0.0), Complex(1.0, 0.0), R, 1e-9));
  EXPECT_FALSE(is_collision(Complex(0.0, 1.0), Complex(1.0, 0.0), 1e-9));
  EXPECT_FALSE(is_antipodal(Complex(0.0, 1.0), Complex(1.0, 0.0), R, 1e-9));
  EXPECT_TRUE(is_antipodal(Complex(0.0, 0.5), Complex(0.0, -2.0), R, 1e-9));
}

TEST(SingularPredicates, OriginPairsOnlyWithInfinity) {
  const CurvatureRadius R(1.0);
  EXPECT_TRUE(is_antipodal(PlanePoint::infinity(), Complex(0.0, 0.0), R, 1e-9));
  EXPECT_TRUE(is_antipodal(Complex(0.0, 0.0), PlanePoint::infinity(), R, 1e-9));
  EXPECT_FALSE(is_antipodal(Complex(1e6, 0.0), Complex(0.0, 0.0), R, 1e-9));
  EXPECT_NEAR(antipodal_margin(Complex(0.0, 0.5), Complex(0.0, -2.0), 1.0), 0.0, 1e-15);
}

}  // namespace
