#include "l0guide/csv_format.hpp"

#include <charconv>
#include <cmath>

namespace l0guide {

namespace {

std::string format_with_precision(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, precision);
  return std::string(buffer, result.ptr);
}

}  // namespace

std::string format_number(double value) { return format_with_precision(value, 9); }

std::string format_exact(double value) { return format_with_precision(value, 17); }

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string("NA");
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& trajectory) {
  out << kTrajectoryCsvHeader << '\n';
  for (const auto& s : trajectory.samples) {
    out << format_number(s.t) << ',' << format_number(s.x) << ',' << format_number(s.y) << ','
        << format_number(s.psi) << ',' << format_number(s.d) << ',' << format_number(s.eta) << ','
        << format_number(s.kappa) << ',' << format_number(s.lookahead) << ',' << format_number(s.los_length)
        << ',' << format_number(s.eta_bar) << ',' << to_string(s.region) << ','
        << format_number(s.lateral_accel) << ',' << format_number(s.lyapunov) << '\n';
  }
}

void write_envelope_csv(std::ostream& out, const EnvelopeReport& report) {
  out << kEnvelopeCsvHeader << '\n';
  for (Eigen::Index i = 0; i < report.d.size(); ++i) {
    for (Eigen::Index j = 0; j < report.eta.size(); ++j) {
      out << format_number(report.d[i]) << ',' << format_number(report.eta[j]) << ','
          << format_number(report.boundary_const[i]) << ',' << format_number(report.boundary_var[i]) << ','
          << to_string(report.regions_const.at(static_cast<int>(i), static_cast<int>(j))) << ','
          << to_string(report.regions_var.at(static_cast<int>(i), static_cast<int>(j))) << '\n';
    }
  }
}

void write_envelope_summary_csv(std::ostream& out, const EnvelopeReport& report) {
  out << kEnvelopeSummaryHeader << '\n'
      << format_number(report.fraction_const) << ',' << format_number(report.fraction_var) << ','
      << format_number(report.gain.absolute) << ',' << format_number(report.gain.relative) << '\n';
}

void write_boundary_csv(std::ostream& out, const EnvelopeReport& report) {
  out << kBoundaryCsvHeader << '\n';
  for (Eigen::Index i = 0; i < report.d.size(); ++i)
    out << format_number(report.d[i]) << ',' << format_number(report.boundary_const[i]) << ','
        << format_number(report.boundary_var[i]) << '\n';
}

void write_polar_csv(std::ostream& out, const std::vector<PolarPoint>& points) {
  out << kPolarCsvHeader << '\n';
  for (const auto& p : points)
    out << format_number(p.x) << ',' << format_number(p.y) << ',' << to_string(p.region) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& series) {
  out << kSweepCsvHeader << '\n';
  for (const auto& p : series)
    out << format_number(p.ratio) << ',' << format_number(p.fraction_const) << ','
        << format_number(p.fraction_var) << ',' << format_number(p.gain.absolute) << ','
        << format_number(p.gain.relative) << '\n';
}

}  // namespace l0guide
