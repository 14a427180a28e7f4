#include "l0guide/performance.hpp"

#include "l0guide/csv_format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace l0guide {

std::optional<double> settling_time(const TrajectoryRecord& trajectory, double band) {
  if (!(band > 0.0)) throw GuidanceError(ErrorKind::InvalidArgument, "settling band must be positive");
  const auto& s = trajectory.samples;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double e = std::abs(s[k].d);
    if (e > band) continue;
    if (k == 0) return s[0].t;
    const double prev = std::abs(s[k - 1].d);
    return s[k - 1].t + (s[k].t - s[k - 1].t) * (prev - band) / (prev - e);
  }
  return std::nullopt;
}

double control_effort(const TrajectoryRecord& trajectory) {
  const auto& s = trajectory.samples;
  double effort = 0.0;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const double a0 = s[k].lateral_accel, a1 = s[k + 1].lateral_accel;
    effort += 0.5 * (s[k + 1].t - s[k].t) * (a0 * a0 + a1 * a1);
  }
  return effort;
}

double peak_overshoot(const TrajectoryRecord& trajectory, double band) {
  const auto entry = settling_time(trajectory, band);
  if (!entry) return 0.0;
  const auto& s = trajectory.samples;
  const double side = s.front().d < 0.0 ? -1.0 : 1.0;
  double peak = 0.0;
  for (const auto& sample : s)
    if (sample.t >= *entry) peak = std::max(peak, -side * sample.d - band);
  return peak;
}

SaturationExit saturation_exit(const TrajectoryRecord& trajectory, const GuidanceLimits<double>& limits) {
  const auto& s = trajectory.samples;
  if (s.empty()) return {0.0, 0.0, true};
  const double bound =
      limits.min_turn_radius / limits.speed * std::max(0.0, std::abs(s.front().eta) - s.front().eta_bar);

  std::size_t k = 0;
  while (k < s.size() && s[k].region != Region::S1) ++k;
  if (k == 0) return {0.0, bound, true};
  if (k == s.size()) return {s.back().t - s.front().t, bound, false};

  // Interpolate the zero of |eta| - eta_bar between the last saturated and
  // the first unsaturated sample.
  const double before = std::abs(s[k - 1].eta) - s[k - 1].eta_bar;
  const double after = std::abs(s[k].eta) - s[k].eta_bar;
  double fraction = 1.0;
  if (before > after) fraction = std::clamp(before / (before - after), 0.0, 1.0);
  return {s[k - 1].t + fraction * (s[k].t - s[k - 1].t) - s.front().t, bound, true};
}

PerformanceReport evaluate_performance(const TrajectoryRecord& trajectory, const GuidanceLimits<double>& limits,
                                       double band) {
  PerformanceReport report;
  report.settling_time = settling_time(trajectory, band);
  report.band_entered = report.settling_time.has_value();
  report.control_effort = control_effort(trajectory);
  report.peak_overshoot = peak_overshoot(trajectory, band);
  const SaturationExit exit = saturation_exit(trajectory, limits);
  report.exit_measured = exit.measured;
  report.exit_bound = exit.bound;
  return report;
}

std::string to_key_value(const PerformanceReport& report) {
  std::ostringstream out;
  out << "t_s=" << format_optional(report.settling_time) << '\n'
      << "J=" << format_number(report.control_effort) << '\n'
      << "Mp=" << format_number(report.peak_overshoot) << '\n'
      << "T_far_measured=" << format_number(report.exit_measured) << '\n'
      << "T_far_bound=" << format_number(report.exit_bound) << '\n'
      << "band_entered=" << (report.band_entered ? "true" : "false") << '\n';
  return out.str();
}

std::string to_csv_row(const PerformanceReport& report) {
  return format_optional(report.settling_time) + ',' + format_number(report.control_effort) + ',' +
         format_number(report.peak_overshoot) + ',' + format_number(report.exit_measured) + ',' +
         format_number(report.exit_bound);
}

}  // namespace l0guide
