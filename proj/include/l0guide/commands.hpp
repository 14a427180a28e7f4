#pragma once

#include "l0guide/scenario.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace l0guide {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

int exit_code_for(ErrorKind kind);

std::string read_text_file(const std::filesystem::path& file);

/// "a:b:step", inclusive of b up to rounding.
std::vector<double> parse_ratio_range(std::string_view text);

/// trajectory_<label>.csv, performance_<label>.{csv,txt} per profile, plus summary.txt.
void run_simulate_command(const Scenario& scenario, const std::filesystem::path& out_dir, std::ostream& log);

/// envelope_grid.csv, boundary.csv, polar_<label>.csv, summary.{csv,txt}.
void run_envelope_command(const EnvelopeConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// sweep.csv; L_min and d_c come from the variable profile.
void run_sweep_command(const EnvelopeConfig& config, const std::vector<double>& ratios,
                       const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace l0guide
