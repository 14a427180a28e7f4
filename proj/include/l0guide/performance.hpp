#pragma once

#include "l0guide/flight_sim.hpp"

#include <optional>
#include <string>

namespace l0guide {

struct SaturationExit {
  double measured;  ///< duration of the initial contiguous S2/S3 phase
  double bound;     ///< (R_min / V) (|eta(0)| - eta_bar(d(0)))^+
  bool exited;
};

struct PerformanceReport {
  std::optional<double> settling_time;
  double control_effort = 0.0;
  double peak_overshoot = 0.0;
  bool band_entered = false;
  double exit_measured = 0.0;
  double exit_bound = 0.0;
};

/// First time |d| <= eps, linearly interpolated between bracketing samples.
std::optional<double> settling_time(const TrajectoryRecord& trajectory, double band);

/// Trapezoidal integral of a_d^2.
double control_effort(const TrajectoryRecord& trajectory);

/// max over t >= t_eps of (-d(t) - eps)^+, with d mirrored when d(0) < 0.
double peak_overshoot(const TrajectoryRecord& trajectory, double band);

SaturationExit saturation_exit(const TrajectoryRecord& trajectory, const GuidanceLimits<double>& limits);

PerformanceReport evaluate_performance(const TrajectoryRecord& trajectory, const GuidanceLimits<double>& limits,
                                       double band);

std::string to_key_value(const PerformanceReport& report);

inline constexpr const char* kPerformanceCsvHeader = "t_s,J,Mp,T_far_measured,T_far_bound";
std::string to_csv_row(const PerformanceReport& report);

}  // namespace l0guide
