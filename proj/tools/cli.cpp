#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "mobnbody/errors.hpp"
#include "mobnbody/families.hpp"
#include "mobnbody/io.hpp"
#include "mobnbody/mobius.hpp"
#include "mobnbody/verify.hpp"

namespace mobnbody::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::vector<double> matrix;
  std::size_t conjugations = 0;
  std::string input;
  std::string output;
  std::string summary;
  std::string trajectory;
  double tol = 1e-10;
  double t_end = 1.0;
  std::size_t samples = 100;
  std::string tag = "elliptic";
  std::string shape = "two-body";
  double m = 0.0;
  double M = 0.0;
  double r = 0.5;
  double R = 1.0;
  std::uint64_t seed = 1;
  std::vector<double> z1{0.0, 0.0}, z2{0.0, 0.0}, z0{1.0, 0.0};
};

// Writes `text` to `path`, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw FormatError("cannot write '" + path + "'");
  f << text;
}

json points_json(const std::vector<PlanePoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(point_to_json(p));
  return arr;
}

json report_json(const ResidualReport& rep) {
  json per = json::array();
  for (auto z : rep.per_body) per.push_back(complex_to_json(z));
  return {{"class", std::string(to_string(rep.tag))}, {"t", rep.t}, {"per_body", per},
          {"max_norm", rep.max_norm}, {"l2_norm", rep.l2_norm}};
}

json root_json(const RootResult& r) {
  return {{"root", r.root}, {"bracket", {r.lo, r.hi}}, {"residual", r.residual}, {"iterations", r.iterations}};
}

int classify_matrix(const RunConfig& rc, std::ostream& out) {
  const auto& v = rc.matrix;
  const MobiusMatrix A({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
  const MobiusClass cls = classify(A, rc.tol);
  json j{{"class", std::string(to_string(cls))}, {"trace_squared", complex_to_json(A.trace() * A.trace())}};
  j["fixed_points"] = points_json(fixed_points(A, rc.tol).points);
  if (rc.conjugations > 0) {
    std::mt19937_64 rng(rc.seed);
    std::normal_distribution<double> g;
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < rc.conjugations; ++i) {
      const MobiusMatrix D({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)});
      if (classify(D.inverse() * A * D, rc.tol) != cls) ++mismatches;
    }
    j["conjugations"] = rc.conjugations;
    j["conjugation_mismatches"] = mismatches;
  }
  out << j.dump() << '\n';
  return 0;
}

int family_build(const RunConfig& rc, std::ostream& out) {
  FamilySpec spec;
  spec.tag = parse_solution_class(rc.tag);
  spec.shape = parse_family_shape(rc.shape);
  spec.r = rc.r;
  spec.m = rc.m;
  spec.M = rc.M;
  spec.R = rc.R;
  const BuiltFamily fam = build_family(spec);
  emit(rc.output, configuration_to_json(fam.config).dump(2) + "\n", out);
  if (!rc.summary.empty()) {
    json s{{"class", rc.tag}, {"shape", rc.shape}, {"mass_free", fam.mass_free}, {"residual", report_json(fam.report)}};
    if (fam.alpha != 0.0) s["alpha"] = fam.alpha;
    emit(rc.summary, s.dump(2) + "\n", out);
  }
  return 0;
}

int family_solve(const RunConfig& rc, std::ostream& out) {
  const SolutionClassTag tag = parse_solution_class(rc.tag);
  const FamilyShape shape = parse_family_shape(rc.shape);
  json j{{"class", rc.tag}, {"shape", rc.shape}};
  if (tag == SolutionClassTag::MobiusParabolic) {
    AlphaRoots roots;
    if (shape == FamilyShape::TwoBodyAntipodal) {
      roots = find_alpha_roots_2body(rc.m, rc.R);
    } else if (shape == FamilyShape::ThreeBodyParabolicWithCenter) {
      roots = find_alpha_roots_3body(rc.m, rc.M, rc.R);
    } else {
      throw std::invalid_argument("parabolic solve supports the two-body and parabolic-center shapes");
    }
    json all = json::array();
    json detail = json::array();
    for (const auto& r : roots.roots) {
      all.push_back(r.root);
      detail.push_back(root_json(r));
    }
    j["roots"] = all;
    j["root_details"] = detail;
    j["physical"] = roots.physical ? root_json(*roots.physical) : json(nullptr);
  } else if (shape == FamilyShape::TwoBodyAntipodal) {
    j["required_mass"] = complex_to_json(required_antipodal_mass(tag, rc.r, rc.R));
    const MassSolve s = solve_antipodal_mass(tag, rc.r, rc.R);
    j["mass"] = s.mass;
    j["bisection_mass"] = s.bisection_mass;
    j["residual"] = s.residual;
  } else {
    FamilySpec spec{tag, shape, rc.r, rc.m, rc.M, rc.R};
    const BuiltFamily fam = build_family(spec);
    j["mass_free"] = fam.mass_free;
    j["masses"] = fam.config.masses();
    j["residual"] = fam.report.max_norm;
  }
  out << j.dump() << '\n';
  return 0;
}

int integrate_cmd(const RunConfig& rc, std::ostream& out) {
  const Configuration c0 = read_configuration(rc.input);
  IntegratorOptions opt;
  opt.rel_tol = rc.tol;
  opt.abs_tol = rc.tol;
  opt.samples = rc.samples;
  const Trajectory traj = integrate(c0, rc.t_end, opt);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  emit(rc.output, csv.str(), out);

  const double e0 = energy(traj.states.front()).total;
  const double e1 = energy(traj.states.back()).total;
  json s{{"termination", std::string(to_string(traj.termination))},
         {"detail", traj.detail},
         {"t_final", traj.t.back()},
         {"samples", traj.size()},
         {"energy_initial", e0},
         {"energy_final", e1},
         {"energy_relative_drift", std::abs(e1 - e0) / std::max(std::abs(e0), 1e-300)},
         {"accepted_steps", traj.stats.accepted},
         {"rejected_steps", traj.stats.rejected},
         {"rhs_evaluations", traj.stats.rhs_evaluations}};
  // Without --output the CSV owns stdout, so the summary goes to --summary only.
  if (!rc.summary.empty()) {
    emit(rc.summary, s.dump(2) + "\n", out);
  } else if (!rc.output.empty()) {
    out << s.dump() << '\n';
  }
  return traj.termination == Termination::Completed ? 0 : 1;
}

int verify_cmd(const RunConfig& rc, std::ostream& out) {
  const Configuration c = read_configuration(rc.input);
  out << report_json(residual(parse_solution_class(rc.tag), c)).dump() << '\n';
  return 0;
}

int verify_trajectory_cmd(const RunConfig& rc, std::ostream& out) {
  const Configuration c = read_configuration(rc.input);
  std::ifstream in(rc.trajectory);
  if (!in) throw FormatError("cannot open trajectory file '" + rc.trajectory + "'");
  const Trajectory traj = read_trajectory_csv(in, c);
  const SolutionClassTag tag = parse_solution_class(rc.tag);
  const InvarianceReport inv = check_orbit_invariance(traj, tag);
  const DriftReport drift = residual_drift(traj, tag);
  json rates = json::array();
  for (auto mu : inv.body_rates) rates.push_back(complex_to_json(mu));
  json j{{"class", rc.tag},
         {"max_deviation", inv.max_deviation},
         {"time_of_max", inv.time_of_max},
         {"rate", complex_to_json(inv.rate)},
         {"body_rates", rates},
         {"energy_relative_drift", drift.energy_relative_drift},
         {"residual_max_norm", drift.residual_max_norm},
         {"residual_exceeds_10x_at", drift.residual_exceeds_10x_at ? json(*drift.residual_exceeds_10x_at) : json()},
         {"min_separation", drift.min_separation},
         {"min_antipodal_margin", drift.min_antipodal_margin}};
  out << j.dump() << '\n';
  return 0;
}

int orbit_sample_cmd(const RunConfig& rc, std::ostream& out) {
  const SubgroupKind kind = parse_subgroup_kind(rc.tag);
  const Complex z0{rc.z0[0], rc.z0[1]};
  if (rc.samples < 1) throw std::invalid_argument("--samples must be at least 1");
  std::vector<double> grid;
  for (std::size_t i = 0; i <= rc.samples; ++i) grid.push_back(rc.t_end * static_cast<double>(i) / rc.samples);
  PhiEvaluator phi_eval;
  if (kind == SubgroupKind::HomographicLox) {
    const PhiParams p = closed_form_phi_params(std::abs(z0), rc.R);
    phi_eval = [p](double t) { return phi(t, p); };
  }
  const auto pts = orbit_samples(kind, z0, grid, phi_eval);
  std::ostringstream csv;
  csv.precision(17);
  csv << "t,re,im\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    csv << grid[i] << ',';
    if (pts[i].is_infinite()) {
      csv << "inf,inf\n";
    } else {
      csv << pts[i].value().real() << ',' << pts[i].value().imag() << '\n';
    }
  }
  emit(rc.output, csv.str(), out);
  return 0;
}

int distance_cmd(const RunConfig& rc, std::ostream& out) {
  const CurvatureRadius R(rc.R);
  const PlanePoint a(rc.z1[0], rc.z1[1]);
  const PlanePoint b(rc.z2[0], rc.z2[1]);
  out << json{{"distance", geodesic_distance(a, b, R)}}.dump() << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Mobius solutions of the curved n-body problem"};
  app.require_subcommand(1);

  auto* cm = app.add_subcommand("classify-matrix", "classify a Mobius matrix given as re/im of a, b, c, d");
  cm->add_option("entries", rc.matrix, "a_re a_im b_re b_im c_re c_im d_re d_im")->expected(8)->required();
  cm->add_option("--tol", rc.tol, "trace tolerance");
  cm->add_option("--conjugations", rc.conjugations, "random conjugations to test for invariance");
  cm->add_option("--seed", rc.seed);

  auto* fam = app.add_subcommand("family", "build or solve a solution family");
  fam->require_subcommand(1);
  auto* build = fam->add_subcommand("build", "emit the family's configuration JSON");
  auto* solve = fam->add_subcommand("solve", "report the solved scalar (alpha roots or mass)");
  for (auto* sub : {build, solve}) {
    sub->add_option("--class", rc.tag)->required();
    sub->add_option("--shape", rc.shape);
    sub->add_option("--r", rc.r);
    sub->add_option("--m", rc.m);
    sub->add_option("--M", rc.M);
    sub->add_option("--R", rc.R);
  }
  build->add_option("--output", rc.output);
  build->add_option("--summary", rc.summary);

  auto* integ = app.add_subcommand("integrate", "integrate a configuration and write a CSV trajectory");
  integ->add_option("--input", rc.input)->required();
  integ->add_option("--t-end", rc.t_end)->required();
  integ->add_option("--tol", rc.tol);
  integ->add_option("--samples", rc.samples);
  integ->add_option("--output", rc.output);
  integ->add_option("--summary", rc.summary);

  auto* ver = app.add_subcommand("verify", "evaluate the residual of a class's condition system");
  ver->add_option("--class", rc.tag)->required();
  ver->add_option("--input", rc.input)->required();

  auto* vt = app.add_subcommand("verify-trajectory", "orbit invariance and drift of a CSV trajectory");
  vt->add_option("--class", rc.tag)->required();
  vt->add_option("--input", rc.input)->required();
  vt->add_option("--trajectory", rc.trajectory)->required();

  auto* os = app.add_subcommand("orbit-sample", "sample the orbit of a point under a one-parameter family");
  os->add_option("--class", rc.tag)->required();
  os->add_option("--z0", rc.z0)->expected(2);
  os->add_option("--t-end", rc.t_end);
  os->add_option("--samples", rc.samples);
  os->add_option("--R", rc.R);
  os->add_option("--output", rc.output);

  auto* dist = app.add_subcommand("distance", "geodesic distance between two points");
  dist->add_option("--R", rc.R);
  dist->add_option("--z1", rc.z1)->expected(2)->required();
  dist->add_option("--z2", rc.z2)->expected(2)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (!(rc.tol > 0.0)) {
    err << "error: --tol must be positive\n";
    return 2;
  }

  try {
    if (*cm) return classify_matrix(rc, out);
    if (*build) return family_build(rc, out);
    if (*solve) return family_solve(rc, out);
    if (*integ) return integrate_cmd(rc, out);
    if (*ver) return verify_cmd(rc, out);
    if (*vt) return verify_trajectory_cmd(rc, out);
    if (*os) return orbit_sample_cmd(rc, out);
    if (*dist) return distance_cmd(rc, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace mobnbody::cli
