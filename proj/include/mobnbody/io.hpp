#pragma once

// File formats shared by the command-line tool:
//   configuration JSON  {"R": 1, "bodies": [{"mass": 1, "z": [re, im], "v": [re, im]}]}
//   trajectory CSV      t, then z_re, z_im, v_re, v_im per body, then energy

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mobnbody/dynamics.hpp"

namespace mobnbody {

// Malformed input; the message names the offending field.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

nlohmann::json complex_to_json(Complex z);
nlohmann::json point_to_json(const PlanePoint& p);  // "inf" for infinity
Complex complex_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json configuration_to_json(const Configuration& c);
// Field errors become FormatError; physically invalid data (nonpositive mass,
// singular pair) keeps its own exception type.
Configuration configuration_from_json(const nlohmann::json& j);

Configuration read_configuration(const std::string& path);
void write_configuration(const std::string& path, const Configuration& c);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
// Rebuilds a trajectory from CSV rows; masses and R come from `like`.
Trajectory read_trajectory_csv(std::istream& in, const Configuration& like);

}  // namespace mobnbody
