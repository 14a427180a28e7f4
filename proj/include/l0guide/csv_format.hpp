#pragma once

#include "l0guide/envelope.hpp"
#include "l0guide/flight_sim.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace l0guide {

/// 9 significant digits, '.' decimal separator independent of locale.
std::string format_number(double value);

/// 17 significant digits; round-trips doubles exactly.
std::string format_exact(double value);

std::string format_optional(const std::optional<double>& value);

inline constexpr const char* kTrajectoryCsvHeader = "t,x,y,psi,d,eta,kappa,L0_eff,L1,eta_bar,region,a_d,V_lyap";
inline constexpr const char* kEnvelopeCsvHeader = "d,eta,eta_bar_c,eta_bar_v,region_c,region_v";
inline constexpr const char* kEnvelopeSummaryHeader = "A_const,A_var,G_abs,G_rel";
inline constexpr const char* kBoundaryCsvHeader = "d,eta_bar_c,eta_bar_v";
inline constexpr const char* kPolarCsvHeader = "x,y,region";
inline constexpr const char* kSweepCsvHeader = "ratio,A_const,A_var,G_abs,G_rel";

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& trajectory);
void write_envelope_csv(std::ostream& out, const EnvelopeReport& report);
void write_envelope_summary_csv(std::ostream& out, const EnvelopeReport& report);
void write_boundary_csv(std::ostream& out, const EnvelopeReport& report);
void write_polar_csv(std::ostream& out, const std::vector<PolarPoint>& points);
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& series);

}  // namespace l0guide
