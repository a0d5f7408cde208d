#include "mobnbody/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace mobnbody {

using nlohmann::json;

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double number_field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw FormatError("missing field '" + where + key + "'");
  if (!j.at(key).is_number()) throw FormatError("field '" + where + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json point_to_json(const PlanePoint& p) {
  if (p.is_infinite()) return "inf";
  return complex_to_json(p.value());
}

Complex complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("field '" + field + "' must be a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json configuration_to_json(const Configuration& c) {
  json bodies = json::array();
  for (const auto& b : c.bodies()) {
    bodies.push_back({{"mass", b.mass}, {"z", complex_to_json(b.z)}, {"v", complex_to_json(b.v)}});
  }
  return {{"R", c.R()}, {"bodies", bodies}};
}

Configuration configuration_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("configuration must be a JSON object");
  const double R = number_field(j, "R", "");
  if (!j.contains("bodies")) throw FormatError("missing field 'bodies'");
  const json& arr = j.at("bodies");
  if (!arr.is_array() || arr.empty()) throw FormatError("field 'bodies' must be a nonempty array");
  std::vector<Body> bodies;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "bodies[" + std::to_string(k) + "].";
    const json& b = arr[k];
    if (!b.is_object()) throw FormatError("field 'bodies[" + std::to_string(k) + "]' must be an object");
    Body body;
    body.mass = number_field(b, "mass", where);
    if (!b.contains("z")) throw FormatError("missing field '" + where + "z'");
    body.z = complex_from_json(b.at("z"), where + "z");
    if (b.contains("v")) body.v = complex_from_json(b.at("v"), where + "v");
    bodies.push_back(body);
  }
  return Configuration(CurvatureRadius(R), std::move(bodies));
}

Configuration read_configuration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open configuration file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw FormatError("configuration file '" + path + "' is not valid JSON: " + e.what());
  }
  return configuration_from_json(j);
}

void write_configuration(const std::string& path, const Configuration& c) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << configuration_to_json(c).dump(2) << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t n = traj.empty() ? 0 : traj.states.front().size();
  out << "t";
  for (std::size_t k = 0; k < n; ++k) {
    out << ",z" << k << "_re,z" << k << "_im,v" << k << "_re,v" << k << "_im";
  }
  out << ",energy\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << fmt(traj.t[i]);
    for (const auto& b : traj.states[i].bodies()) {
      out << ',' << fmt(b.z.real()) << ',' << fmt(b.z.imag()) << ',' << fmt(b.v.real()) << ',' << fmt(b.v.imag());
    }
    out << ',' << fmt(energy(traj.states[i]).total) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in, const Configuration& like) {
  const std::size_t n = like.size();
  const std::size_t columns = 4 * n + 2;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("trajectory CSV is empty");
  Trajectory traj;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw FormatError("trajectory CSV row " + std::to_string(row) + ": '" + cell + "' is not a number");
      }
    }
    if (vals.size() != columns) {
      throw FormatError("trajectory CSV row " + std::to_string(row) + " has " + std::to_string(vals.size()) +
                        " columns, expected " + std::to_string(columns));
    }
    std::vector<Body> bodies = like.bodies();
    for (std::size_t k = 0; k < n; ++k) {
      bodies[k].z = {vals[1 + 4 * k], vals[2 + 4 * k]};
      bodies[k].v = {vals[3 + 4 * k], vals[4 + 4 * k]};
    }
    traj.t.push_back(vals[0]);
    traj.states.emplace_back(like.radius(), std::move(bodies));
  }
  if (traj.empty()) throw FormatError("trajectory CSV has no data rows");
  return traj;
}

}  // namespace mobnbody
