#pragma once

// Concrete Mobius solution families: root-finders for the parabolic alpha
// equations, mass solves for symmetric configurations, family constructors
// and the determinant conditions for totally geodesic solutions.

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "mobnbody/conditions.hpp"

namespace mobnbody {

struct RootResult {
  double root = 0.0;
  double lo = 0.0;  // bracket that contained the root
  double hi = 0.0;
  double residual = 0.0;  // |f(root)|
  int iterations = 0;
};

// Every real root found on [lo, hi] by a uniform scan of `samples` points.
// Sign changes are bracketed and bisected, then polished by Newton; roots of
// even multiplicity are caught as sign changes of f'. Sorted, deduplicated.
std::vector<RootResult> scan_roots(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                   double lo, double hi, int samples = 10'000);

// 16 a^3 (1-a^2)^2 - (m/R)(1+a^2)^6 and its derivative.
double parabolic_alpha_2body(double alpha, double m, double R);
double parabolic_alpha_2body_derivative(double alpha, double m, double R);
// 16 a^3 (1-a^2)^2 - ((1+a^2)^4/R)(m (1+a^2)^2 - 4M (1-a^2)^2) and its derivative.
double parabolic_alpha_3body(double alpha, double m, double M, double R);
double parabolic_alpha_3body_derivative(double alpha, double m, double M, double R);

struct AlphaRoots {
  std::vector<RootResult> roots;      // all real roots in [0, pi]
  std::optional<RootResult> physical;  // smallest root strictly inside (1, pi)
};

AlphaRoots find_alpha_roots_2body(double m, double R);
AlphaRoots find_alpha_roots_3body(double m, double M, double R);

// Physical root only; NoRoot when (1, pi) holds no root.
RootResult solve_parabolic_alpha_2body(double m, double R);
RootResult solve_parabolic_alpha_3body(double m, double M, double R);

// r (R^2-r^2)(a^2+R^2)^2 + a (R^2-a^2)(r^2+R^2)^2, whose real roots give the
// admissible partners z2 = a of an equal-mass hyperbolic pair with z1 = r.
double hyperbolic_pair_polynomial(double alpha, double r, double R);
std::vector<double> hyperbolic_pair_real_roots(double r, double R);

// Common mass m making the tag's system hold at z1 = r, z2 = -r, computed
// from body 1 (the system is linear in m). Complex because the homographic
// and asymptotic systems need not give a real answer.
Complex required_antipodal_mass(SolutionClassTag tag, double r, double R);

struct MassSolve {
  double mass = 0.0;
  double bisection_mass = 0.0;  // independent bracketed estimate
  double residual = 0.0;        // residual max-norm of the built pair
};

// Throws Infeasible when the required mass is non-real, not positive, or the
// system degenerates (r = R).
MassSolve solve_antipodal_mass(SolutionClassTag tag, double r, double R);

enum class FamilyShape { TwoBodyAntipodal, ThreeBodyEulerian, ThreeBodyEquilateral, ThreeBodyParabolicWithCenter };

std::string_view to_string(FamilyShape shape) noexcept;
// "two-body", "eulerian", "equilateral", "parabolic-center".
FamilyShape parse_family_shape(std::string_view name);

struct FamilySpec {
  SolutionClassTag tag = SolutionClassTag::MobiusElliptic;
  FamilyShape shape = FamilyShape::TwoBodyAntipodal;
  double r = 0.5;   // radius of the ring; ignored by the parabolic shapes
  double m = 0.0;   // ring mass: used when the system leaves it free, otherwise solved
  double M = 0.0;   // centre mass of the three-body shapes
  double R = 1.0;
};

struct BuiltFamily {
  Configuration config;
  double alpha = 0.0;      // parabolic shapes only
  bool mass_free = false;  // the system holds for every ring mass
  ResidualReport report;
};

// Places the bodies, solves the free scalar (mass or alpha) and assigns the
// tag's velocities. Throws Infeasible or NoRoot when no admissible family exists.
//   TwoBodyAntipodal        z = r, -r (z = alpha R i, -alpha R i when parabolic)
//   ThreeBodyEulerian       z = r, -r, 0 with centre mass M, ring mass solved
//   ThreeBodyEquilateral    z = r e^{2 pi i k/3}, common mass solved
//   ThreeBodyParabolicWithCenter  z = alpha R i, -alpha R i, 0
BuiltFamily build_family(const FamilySpec& spec);

// Least-squares common mass for the given positions:
// m = sum conj(S_k) L_k / sum |S_k|^2 with S_k the unit-mass interaction sum.
struct EqualMassSolve {
  Complex mass{0.0, 0.0};
  bool mass_free = false;  // both sides vanish identically
  double consistency = 0.0;  // max_k |L_k - m S_k|
};
EqualMassSolve solve_equal_mass(SolutionClassTag tag, const std::vector<Complex>& z, double R);

// (R^2+z1 conj z3)(R^2+z2 conj z1)(R^2+z3 conj z2) - (R^2+z1 conj z2)(R^2+z1 conj z3)(R^2+z2 conj z3),
// the combination stated for the equilateral characterization.
Complex totally_geodesic_det_3body(const std::vector<Complex>& z, double R);

// Determinant of the 3x3 linear system for the masses of a three-body
// totally geodesic configuration, up to a nonzero factor:
// P - conj(P) with P = (R^2+z1 conj z2)(R^2+z2 conj z3)(R^2+z3 conj z1).
Complex totally_geodesic_mass_determinant(const std::vector<Complex>& z, double R);

// sin t2 - sin t3 + sin(t3-t2) and cos t2 + cos t3 + cos(t3-t2) as a complex number.
Complex equilateral_trig_system(double theta2, double theta3);

// 1 / (|z2-z1|^4 |R^2 + conj(z2) z1|^4): modulus of the two-body mass determinant.
double two_body_geodesic_obstruction(Complex z1, Complex z2, double R);

// Max-norm residual of the Eulerian totally geodesic system with m1 = m2 = m,
// z1 = r, z2 = -r and the given centre mass m3 (zero for the restricted problem).
double restricted_eulerian_obstruction(double r, double m, double m3, double R);

}  // namespace mobnbody
