#include "mobnbody/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mobnbody/errors.hpp"

namespace mobnbody {

namespace {

constexpr double kPi = std::numbers::pi;

double bisect(const std::function<double(double)>& f, double a, double b, double fa, int& iterations) {
  for (int i = 0; i < 200 && b - a > 0.0; ++i) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    ++iterations;
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Newton steps that must stay inside [a, b] and must not increase |f|.
double polish(const std::function<double(double)>& f, const std::function<double(double)>& df, double x, double a,
              double b, int& iterations) {
  double fx = std::abs(f(x));
  for (int i = 0; i < 20 && fx > 0.0; ++i) {
    const double d = df(x);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = x - f(x) / d;
    ++iterations;
    if (!(next >= a && next <= b)) break;
    const double fn = std::abs(f(next));
    if (fn >= fx) break;
    const bool tiny = std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x));
    x = next;
    fx = fn;
    if (tiny) break;
  }
  return x;
}

}  // namespace

std::vector<RootResult> scan_roots(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                   double lo, double hi, int samples) {
  if (!(hi > lo) || samples < 2) throw std::invalid_argument("scan_roots needs hi > lo and at least 2 samples");
  std::vector<double> x(samples + 1), fx(samples + 1), dfx(samples + 1);
  double scale = 1.0;
  for (int i = 0; i <= samples; ++i) {
    x[i] = i == samples ? hi : lo + (hi - lo) * static_cast<double>(i) / samples;
    fx[i] = f(x[i]);
    dfx[i] = df(x[i]);
    if (std::isfinite(fx[i])) scale = std::max(scale, std::abs(fx[i]));
  }
  const double touch_tol = 1e-15 * scale;

  std::vector<RootResult> found;
  for (int i = 0; i <= samples; ++i) {
    if (fx[i] == 0.0) found.push_back({x[i], x[i], x[i], 0.0, 0});
    if (i == samples) break;
    const double a = x[i], b = x[i + 1];
    if (fx[i] * fx[i + 1] < 0.0) {
      RootResult r{0.0, a, b, 0.0, 0};
      r.root = polish(f, df, bisect(f, a, b, fx[i], r.iterations), a, b, r.iterations);
      r.residual = std::abs(f(r.root));
      found.push_back(r);
    } else if (dfx[i] * dfx[i + 1] < 0.0) {
      // f keeps its sign here but f' turns: a double root if f touches zero.
      RootResult r{0.0, a, b, 0.0, 0};
      const double c = bisect(df, a, b, dfx[i], r.iterations);
      if (std::abs(f(c)) <= touch_tol) {
        r.root = c;
        r.residual = std::abs(f(c));
        found.push_back(r);
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const RootResult& p, const RootResult& q) { return p.root < q.root; });
  std::vector<RootResult> out;
  for (const auto& r : found) {
    if (!out.empty() && std::abs(r.root - out.back().root) <= 1e-10 * std::max(1.0, std::abs(r.root))) {
      if (r.residual < out.back().residual) out.back() = r;
      continue;
    }
    out.push_back(r);
  }
  return out;
}

double parabolic_alpha_2body(double a, double m, double R) {
  const double a2 = a * a;
  const double p = 1.0 + a2;
  const double q = 1.0 - a2;
  const double p3 = p * p * p;
  return 16.0 * a * a2 * q * q - (m / R) * p3 * p3;
}

double parabolic_alpha_2body_derivative(double a, double m, double R) {
  const double a2 = a * a;
  const double p = 1.0 + a2;
  const double q = 1.0 - a2;
  const double p5 = p * p * p * p * p;
  return 48.0 * a2 * q * q - 64.0 * a2 * a2 * q - (m / R) * 12.0 * a * p5;
}

double parabolic_alpha_3body(double a, double m, double M, double R) {
  const double a2 = a * a;
  const double p = 1.0 + a2;
  const double q = 1.0 - a2;
  const double p4 = p * p * p * p;
  return 16.0 * a * a2 * q * q - (p4 / R) * (m * p * p - 4.0 * M * q * q);
}

double parabolic_alpha_3body_derivative(double a, double m, double M, double R) {
  const double a2 = a * a;
  const double p = 1.0 + a2;
  const double q = 1.0 - a2;
  const double p3 = p * p * p;
  const double extra = (4.0 * M / R) * (8.0 * a * p3 * q * q - 4.0 * a * p3 * p * q);
  return parabolic_alpha_2body_derivative(a, m, R) + extra;
}

namespace {

AlphaRoots collect_alpha(const std::function<double(double)>& f, const std::function<double(double)>& df) {
  AlphaRoots out;
  out.roots = scan_roots(f, df, 0.0, kPi);
  for (const auto& r : out.roots) {
    if (r.root > 1.0 + 1e-10 && r.root < kPi) {
      out.physical = r;
      break;
    }
  }
  return out;
}

void check_alpha_inputs(double m, double M, double R) {
  if (!(m >= 0.0) || !(M >= 0.0)) throw std::invalid_argument("alpha equations need nonnegative masses");
  if (!(R > 0.0)) throw std::invalid_argument("alpha equations need R > 0");
}

}  // namespace

AlphaRoots find_alpha_roots_2body(double m, double R) {
  check_alpha_inputs(m, 0.0, R);
  return collect_alpha([=](double a) { return parabolic_alpha_2body(a, m, R); },
                       [=](double a) { return parabolic_alpha_2body_derivative(a, m, R); });
}

AlphaRoots find_alpha_roots_3body(double m, double M, double R) {
  check_alpha_inputs(m, M, R);
  return collect_alpha([=](double a) { return parabolic_alpha_3body(a, m, M, R); },
                       [=](double a) { return parabolic_alpha_3body_derivative(a, m, M, R); });
}

RootResult solve_parabolic_alpha_2body(double m, double R) {
  auto roots = find_alpha_roots_2body(m, R);
  if (!roots.physical) {
    throw NoRoot("no root of the two-body alpha equation in (1, pi) for m/R = " + std::to_string(m / R) +
                 "; the mass is too large");
  }
  return *roots.physical;
}

RootResult solve_parabolic_alpha_3body(double m, double M, double R) {
  auto roots = find_alpha_roots_3body(m, M, R);
  if (!roots.physical) {
    throw NoRoot("no root of the three-body alpha equation in (1, pi) for m/R = " + std::to_string(m / R) +
                 ", M/R = " + std::to_string(M / R));
  }
  return *roots.physical;
}

namespace {

// Coefficients of hyperbolic_pair_polynomial, highest degree first.
std::vector<double> hyperbolic_pair_coefficients(double r, double R) {
  const double R2 = R * R;
  const double a = r * (R2 - r * r);
  const double b = (r * r + R2) * (r * r + R2);
  return {a, -b, 2.0 * R2 * a, R2 * b, R2 * R2 * a};
}

}  // namespace

double hyperbolic_pair_polynomial(double alpha, double r, double R) {
  const double R2 = R * R;
  const double s = alpha * alpha + R2;
  const double u = r * r + R2;
  return r * (R2 - r * r) * s * s + alpha * (R2 - alpha * alpha) * u * u;
}

std::vector<double> hyperbolic_pair_real_roots(double r, double R) {
  const auto c = hyperbolic_pair_coefficients(r, R);
  std::size_t lead = 0;
  while (lead < c.size() && c[lead] == 0.0) ++lead;
  if (lead == c.size()) throw DomainError("hyperbolic pair polynomial vanishes identically");
  double bound = 1.0;
  for (std::size_t i = lead + 1; i < c.size(); ++i) bound = std::max(bound, 1.0 + std::abs(c[i] / c[lead]));
  auto f = [&](double x) {
    double v = 0.0;
    for (double ci : c) v = v * x + ci;
    return v;
  };
  auto df = [&](double x) {
    double v = 0.0;
    const std::size_t deg = c.size() - 1;
    for (std::size_t i = 0; i < deg; ++i) v = v * x + c[i] * static_cast<double>(deg - i);
    return v;
  };
  std::vector<double> out;
  for (const auto& root : scan_roots(f, df, -bound, bound, 200'000)) out.push_back(root.root);
  return out;
}

namespace {

std::vector<double> unit_masses(std::size_t n) { return std::vector<double>(n, 1.0); }

// Interaction sum on body k from body j alone with unit mass.
Complex pair_term(const std::vector<Complex>& z, double R, std::size_t k, std::size_t j) {
  std::vector<double> m(z.size(), 0.0);
  m[j] = 1.0;
  return interaction_sum(m, z, R, k);
}

// Sign of the right-hand side relative to interaction_sum for the tag.
double rhs_sign(SolutionClassTag tag) { return tag == SolutionClassTag::HomographicLoxodromic ? -1.0 : 1.0; }

// Right-hand side coefficient multiplying the common mass on body k.
Complex unit_rhs(SolutionClassTag tag, const std::vector<Complex>& z, double R, std::size_t k) {
  const Complex s = interaction_sum(unit_masses(z.size()), z, R, k);
  if (tag == SolutionClassTag::TotallyGeodesic) return (R * R + std::norm(z[k])) / (4.0 * R * R) * s;
  return rhs_sign(tag) * s;
}

double lhs_scale(Complex z, double R) {
  const double R2 = R * R;
  const double s = R2 + std::norm(z);
  return 8.0 * R2 * R2 * R2 * std::max(std::abs(z), R) / (s * s * s);
}

bool admissible_mass(Complex m) { return std::abs(m.imag()) <= 1e-9 * std::abs(m) && m.real() > 0.0; }

std::string describe(Complex m) {
  return "(" + std::to_string(m.real()) + (m.imag() < 0 ? " - " : " + ") + std::to_string(std::abs(m.imag())) + "i)";
}

}  // namespace

Complex required_antipodal_mass(SolutionClassTag tag, double r, double R) {
  if (!(r > 0.0) || !(R > 0.0)) throw std::invalid_argument("antipodal mass needs r > 0 and R > 0");
  if (tag == SolutionClassTag::MobiusParabolic) {
    throw std::invalid_argument("the parabolic pair is built from the alpha equation, not a mass solve");
  }
  if (std::abs(r - R) <= kSingularTolerance * R) {
    throw Infeasible("z and -z are antipodal when r = R; no pair to solve for");
  }
  const std::vector<Complex> z{{r, 0.0}, {-r, 0.0}};
  const Complex s = unit_rhs(tag, z, R, 0);
  const Complex lhs = condition_lhs(tag, z[0], R);
  if (tag == SolutionClassTag::TotallyGeodesic) {
    // 0 = m^2 s: only m = 0 solves it since s never vanishes for a pair.
    return {0.0, 0.0};
  }
  return lhs / s;
}

MassSolve solve_antipodal_mass(SolutionClassTag tag, double r, double R) {
  const Complex m = required_antipodal_mass(tag, r, R);
  const std::string where = r < R ? "r < R" : "r > R";
  if (!admissible_mass(m)) {
    throw Infeasible("the " + std::string(to_string(tag)) + " pair at r = " + std::to_string(r) +
                     " (" + where + ") needs mass " + describe(m) + ", which is not a positive real");
  }
  MassSolve out;
  out.mass = m.real();

  // Bracketed cross-check on g(mu) = Re(conj(s)(L - mu s)), decreasing in mu.
  const std::vector<Complex> z{{r, 0.0}, {-r, 0.0}};
  const Complex s = unit_rhs(tag, z, R, 0);
  const Complex lhs = condition_lhs(tag, z[0], R);
  auto g = [&](double mu) { return (std::conj(s) * (lhs - mu * s)).real(); };
  double lo = 0.0, hi = 1.0;
  while (g(hi) > 0.0 && hi < 1e300) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  out.bisection_mass = 0.5 * (lo + hi);

  const Configuration c(CurvatureRadius(R), {{out.mass, z[0], {}}, {out.mass, z[1], {}}});
  out.residual = residual(tag, c).max_norm;
  return out;
}

std::string_view to_string(FamilyShape shape) noexcept {
  switch (shape) {
    case FamilyShape::TwoBodyAntipodal: return "two-body";
    case FamilyShape::ThreeBodyEulerian: return "eulerian";
    case FamilyShape::ThreeBodyEquilateral: return "equilateral";
    case FamilyShape::ThreeBodyParabolicWithCenter: return "parabolic-center";
  }
  return "unknown";
}

FamilyShape parse_family_shape(std::string_view name) {
  for (auto s : {FamilyShape::TwoBodyAntipodal, FamilyShape::ThreeBodyEulerian, FamilyShape::ThreeBodyEquilateral,
                 FamilyShape::ThreeBodyParabolicWithCenter}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown family shape: " + std::string(name));
}

EqualMassSolve solve_equal_mass(SolutionClassTag tag, const std::vector<Complex>& z, double R) {
  EqualMassSolve out;
  Complex num{0.0, 0.0};
  double den = 0.0;
  bool degenerate = true;
  bool lhs_zero = true;
  std::vector<Complex> L(z.size()), S(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    L[k] = condition_lhs(tag, z[k], R);
    S[k] = unit_rhs(tag, z, R, k);
    double terms = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j != k) terms += std::abs(pair_term(z, R, k, j));
    }
    if (tag == SolutionClassTag::TotallyGeodesic) terms *= (R * R + std::norm(z[k])) / (4.0 * R * R);
    if (std::abs(S[k]) > 1e-10 * terms) degenerate = false;
    if (std::abs(L[k]) > 1e-10 * lhs_scale(z[k], R)) lhs_zero = false;
    num += std::conj(S[k]) * L[k];
    den += std::norm(S[k]);
  }
  if (degenerate) {
    if (!lhs_zero) throw Infeasible("the interaction vanishes but the left-hand side does not");
    out.mass_free = true;
    return out;
  }
  out.mass = num / den;
  if (tag == SolutionClassTag::TotallyGeodesic) out.mass = {0.0, 0.0};
  for (std::size_t k = 0; k < z.size(); ++k) out.consistency = std::max(out.consistency, std::abs(L[k] - out.mass * S[k]));
  return out;
}

namespace {

Configuration place(double R, const std::vector<Complex>& z, const std::vector<double>& m) {
  std::vector<Body> bodies;
  for (std::size_t k = 0; k < z.size(); ++k) bodies.push_back({m[k], z[k], {}});
  return Configuration(CurvatureRadius(R), std::move(bodies));
}

Configuration with_tag_velocities(SolutionClassTag tag, const Configuration& c) {
  return tag == SolutionClassTag::TotallyGeodesic ? set_geodesic_velocities(c) : set_velocities(tag, c);
}

double free_mass(const FamilySpec& spec) {
  if (!(spec.m > 0.0)) throw std::invalid_argument("the system leaves the ring mass free; pass a positive m");
  return spec.m;
}

}  // namespace

BuiltFamily build_family(const FamilySpec& spec) {
  const double R = spec.R;
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  const bool parabolic = spec.tag == SolutionClassTag::MobiusParabolic;
  std::vector<Complex> z;
  std::vector<double> m;
  BuiltFamily out{place(R, {{0.0, 0.0}}, {1.0}), 0.0, false, {}};

  switch (spec.shape) {
    case FamilyShape::TwoBodyAntipodal: {
      if (parabolic) {
        if (!(spec.m > 0.0)) throw std::invalid_argument("the parabolic pair needs a positive mass m");
        out.alpha = solve_parabolic_alpha_2body(spec.m, R).root;
        z = {{0.0, out.alpha * R}, {0.0, -out.alpha * R}};
        m = {spec.m, spec.m};
      } else {
        const auto solved = solve_antipodal_mass(spec.tag, spec.r, R);
        z = {{spec.r, 0.0}, {-spec.r, 0.0}};
        m = {solved.mass, solved.mass};
      }
      break;
    }
    case FamilyShape::ThreeBodyEulerian: {
      if (!(spec.M > 0.0)) throw std::invalid_argument("the Eulerian shape needs a positive centre mass M");
      z = {{spec.r, 0.0}, {-spec.r, 0.0}, {0.0, 0.0}};
      const Complex s12 = pair_term(z, R, 0, 1);
      const Complex s13 = pair_term(z, R, 0, 2);
      const Complex lhs = spec.tag == SolutionClassTag::TotallyGeodesic
                              ? Complex(0.0, 0.0)
                              : rhs_sign(spec.tag) * condition_lhs(spec.tag, z[0], R);
      const Complex mass = (lhs - spec.M * s13) / s12;
      if (!admissible_mass(mass)) {
        throw Infeasible("the " + std::string(to_string(spec.tag)) + " Eulerian ring at r = " +
                         std::to_string(spec.r) + " needs mass " + describe(mass) + ", which is not a positive real");
      }
      m = {mass.real(), mass.real(), spec.M};
      break;
    }
    case FamilyShape::ThreeBodyEquilateral: {
      for (int k = 0; k < 3; ++k) z.push_back(std::polar(spec.r, 2.0 * kPi * k / 3.0));
      const auto solved = solve_equal_mass(spec.tag, z, R);
      double mass = 0.0;
      if (solved.mass_free) {
        mass = free_mass(spec);
        out.mass_free = true;
      } else if (admissible_mass(solved.mass)) {
        mass = solved.mass.real();
      } else {
        throw Infeasible("the " + std::string(to_string(spec.tag)) + " equilateral ring at r = " +
                         std::to_string(spec.r) + " needs mass " + describe(solved.mass) +
                         ", which is not a positive real");
      }
      m = {mass, mass, mass};
      break;
    }
    case FamilyShape::ThreeBodyParabolicWithCenter: {
      if (!parabolic) throw std::invalid_argument("the parabolic-center shape belongs to the parabolic class");
      if (!(spec.m > 0.0) || !(spec.M > 0.0)) throw std::invalid_argument("parabolic-center needs m > 0 and M > 0");
      out.alpha = solve_parabolic_alpha_3body(spec.m, spec.M, R).root;
      z = {{0.0, out.alpha * R}, {0.0, -out.alpha * R}, {0.0, 0.0}};
      m = {spec.m, spec.m, spec.M};
      break;
    }
  }
  out.config = with_tag_velocities(spec.tag, place(R, z, m));
  out.report = residual(spec.tag, out.config);
  return out;
}

Complex totally_geodesic_det_3body(const std::vector<Complex>& z, double R) {
  if (z.size() != 3) throw std::invalid_argument("the three-body determinant needs exactly three positions");
  const double R2 = R * R;
  auto f = [&](std::size_t a, std::size_t b) { return R2 + z[a] * std::conj(z[b]); };
  return f(0, 2) * f(1, 0) * f(2, 1) - f(0, 1) * f(0, 2) * f(1, 2);
}

Complex totally_geodesic_mass_determinant(const std::vector<Complex>& z, double R) {
  if (z.size() != 3) throw std::invalid_argument("the three-body determinant needs exactly three positions");
  const double R2 = R * R;
  auto f = [&](std::size_t a, std::size_t b) { return R2 + z[a] * std::conj(z[b]); };
  const Complex p = f(0, 1) * f(1, 2) * f(2, 0);
  return p - std::conj(p);
}

Complex equilateral_trig_system(double t2, double t3) {
  return {std::sin(t2) - std::sin(t3) + std::sin(t3 - t2), std::cos(t2) + std::cos(t3) + std::cos(t3 - t2)};
}

double two_body_geodesic_obstruction(Complex z1, Complex z2, double R) {
  const double d = std::abs(z2 - z1);
  const double a = antipodal_margin(z1, z2, R);
  const double d2 = d * d;
  const double a2 = a * a;
  return 1.0 / (d2 * d2 * a2 * a2);
}

double restricted_eulerian_obstruction(double r, double m, double m3, double R) {
  const double R2 = R * R;
  const Complex z1{r, 0.0}, z2{-r, 0.0};
  auto pair = [&](Complex a, Complex b, double mb) {
    const double d = std::abs(b - a);
    const double g = std::abs(R2 + std::conj(b) * a);
    return mb * (R2 + a * std::conj(b)) * (b - a) / (d * d * d * g * g * g);
  };
  auto centre = [&](Complex a) { return m3 * a / (R2 * R2 * std::pow(std::abs(a), 3)); };
  const Complex e1 = pair(z1, z2, m) - centre(z1);
  const Complex e2 = pair(z2, z1, m) - centre(z2);
  const Complex e3 = m * z1 / std::pow(std::abs(z1), 3) + m * z2 / std::pow(std::abs(z2), 3);
  return std::max({std::abs(e1), std::abs(e2), std::abs(e3)});
}

}  // namespace mobnbody
