#pragma once

// Sectioned key=value configs and the shipped presets. Angles are written in
// degrees. Unknown sections or keys are ParseErrors; broken invariants are
// ValidationErrors naming the key.

#include "l0guide/envelope.hpp"
#include "l0guide/flight_sim.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace l0guide {

struct Scenario {
  PathModel<double> path;
  GuidanceLimits<double> limits;
  std::vector<LookaheadProfile<double>> profiles;  ///< one, or two for a comparison run
  VehicleState init;
  SimConfig sim;
};

struct EnvelopeConfig {
  GridSpec grid;
  GuidanceLimits<double> limits;
  LookaheadProfile<double> const_profile;
  LookaheadProfile<double> var_profile;
  int export_n_d = 201;
  int export_n_eta = 181;

  GridSpec export_grid() const;
};

Scenario parse_scenario(std::string_view text);
std::string serialize_scenario(const Scenario& scenario);

EnvelopeConfig parse_envelope_config(std::string_view text);
std::string serialize_envelope_config(const EnvelopeConfig& config);

/// straight_line_table2, ellipse_table2, envelope_ratio3
const std::vector<std::string>& preset_names();
std::string preset_text(std::string_view name);

std::string profile_label(const LookaheadProfile<double>& profile);

}  // namespace l0guide
