#include "l0guide/commands.hpp"

#include "l0guide/csv_format.hpp"
#include "l0guide/performance.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace l0guide {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& file) {
  // Binary mode keeps '\n' line endings on every platform.
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw GuidanceError(ErrorKind::InvalidArgument, "cannot write " + file.string());
  return out;
}

void prepare_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw GuidanceError(ErrorKind::InvalidArgument, "cannot create output directory " + dir.string());
}

double parse_double(std::string_view text, const std::string& what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw GuidanceError(ErrorKind::ParseError, what + " is not a number: " + std::string(text));
  return value;
}

std::vector<std::string> run_labels(const std::vector<LookaheadProfile<double>>& profiles) {
  std::vector<std::string> labels;
  for (const auto& p : profiles) labels.push_back(profile_label(p));
  if (labels.size() == 2 && labels[0] == labels[1]) labels = {"profile1", "profile2"};
  return labels;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
      return kExitInput;
    default:
      return kExitNumeric;
  }
}

std::string read_text_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw GuidanceError(ErrorKind::ParseError, "cannot read " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<double> parse_ratio_range(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
    throw GuidanceError(ErrorKind::ParseError, "ratio range must be a:b:step");
  const double a = parse_double(text.substr(0, first), "ratio start");
  const double b = parse_double(text.substr(first + 1, second - first - 1), "ratio end");
  const double step = parse_double(text.substr(second + 1), "ratio step");
  if (!(step > 0.0)) throw GuidanceError(ErrorKind::ValidationError, "ratio step must be positive");
  if (a < 1.0) throw GuidanceError(ErrorKind::ValidationError, "ratios must be >= 1");
  if (b < a) throw GuidanceError(ErrorKind::ValidationError, "ratio end must be >= start");
  const double span = (b - a) / step;
  if (span > 1e6) throw GuidanceError(ErrorKind::ValidationError, "ratio range has too many points");

  const auto n = static_cast<long>(std::floor(span + 1e-9));
  std::vector<double> ratios;
  for (long k = 0; k <= n; ++k) ratios.push_back(a + static_cast<double>(k) * step);
  return ratios;
}

void run_simulate_command(const Scenario& scenario, const fs::path& out_dir, std::ostream& log) {
  prepare_directory(out_dir);
  const std::vector<std::string> labels = run_labels(scenario.profiles);

  std::ostringstream summary;
  for (std::size_t i = 0; i < scenario.profiles.size(); ++i) {
    const TrajectoryRecord record =
        run_simulation(scenario.path, scenario.profiles[i], scenario.limits, scenario.init, scenario.sim);
    const double band = resolve_settle_band(scenario.sim, record.samples.front().d);
    const PerformanceReport perf = evaluate_performance(record, scenario.limits, band);

    {
      auto out = open_output(out_dir / ("trajectory_" + labels[i] + ".csv"));
      write_trajectory_csv(out, record);
    }
    {
      auto out = open_output(out_dir / ("performance_" + labels[i] + ".csv"));
      out << kPerformanceCsvHeader << '\n' << to_csv_row(perf) << '\n';
    }
    {
      auto out = open_output(out_dir / ("performance_" + labels[i] + ".txt"));
      out << to_key_value(perf);
    }

    summary << "[" << labels[i] << "]\n"
            << "eps=" << format_number(band) << '\n'
            << to_key_value(perf) << "initially_feasible=" << (record.initially_feasible ? "true" : "false") << '\n'
            << "infeasible_steps=" << record.infeasible_steps << '\n'
            << "final_d=" << format_number(record.samples.back().d) << "\n\n";
    log << labels[i] << ": t_s=" << format_optional(perf.settling_time) << " J=" << format_number(perf.control_effort)
        << " Mp=" << format_number(perf.peak_overshoot) << '\n';
  }
  auto out = open_output(out_dir / "summary.txt");
  out << summary.str();
}

void run_envelope_command(const EnvelopeConfig& config, const fs::path& out_dir, std::ostream& log) {
  prepare_directory(out_dir);
  const EnvelopeReport full =
      compute_envelope(config.grid, config.limits, config.const_profile, config.var_profile, false);
  const GridSpec coarse = config.export_grid();
  const EnvelopeReport exported =
      compute_envelope(coarse, config.limits, config.const_profile, config.var_profile, true);

  {
    auto out = open_output(out_dir / "envelope_grid.csv");
    write_envelope_csv(out, exported);
  }
  {
    auto out = open_output(out_dir / "boundary.csv");
    write_boundary_csv(out, full);
  }
  {
    auto out = open_output(out_dir / "summary.csv");
    write_envelope_summary_csv(out, full);
  }
  if (coarse.d_min >= 0.0) {
    auto out_c = open_output(out_dir / "polar_constant.csv");
    write_polar_csv(out_c, polar_map_export(coarse, config.limits, config.const_profile));
    auto out_v = open_output(out_dir / "polar_variable.csv");
    write_polar_csv(out_v, polar_map_export(coarse, config.limits, config.var_profile));
  } else {
    log << "polar export skipped: grid has d < 0\n";
  }

  std::ostringstream text;
  text << "A_const=" << format_number(full.fraction_const) << '\n'
       << "A_var=" << format_number(full.fraction_var) << '\n'
       << "G_abs=" << format_number(full.gain.absolute) << '\n'
       << "G_rel=" << format_number(full.gain.relative) << '\n';
  try {
    text << "dT_far=" << format_number(far_field_time_gain(config.limits, config.const_profile, config.var_profile))
         << '\n';
  } catch (const GuidanceError& e) {
    if (e.kind() != ErrorKind::BoundUndefined) throw;
    text << "dT_far=NA\n";
  }
  auto out = open_output(out_dir / "summary.txt");
  out << text.str();
  log << text.str();
}

void run_sweep_command(const EnvelopeConfig& config, const std::vector<double>& ratios, const fs::path& out_dir,
                       std::ostream& log) {
  const auto* variable = std::get_if<VariableLookahead<double>>(&config.var_profile);
  if (!variable)
    throw GuidanceError(ErrorKind::ValidationError, "sweep needs a variable profile in [profile2]");
  prepare_directory(out_dir);
  const SweepBase base{config.grid, config.limits, variable->min_length, variable->decay_distance};
  const std::vector<SweepPoint> series = ratio_sweep(ratios, base);
  auto out = open_output(out_dir / "sweep.csv");
  write_sweep_csv(out, series);
  for (const auto& p : series)
    log << "ratio=" << format_number(p.ratio) << " G_abs=" << format_number(p.gain.absolute)
        << " G_rel=" << format_number(p.gain.relative) << '\n';
}

}  // namespace l0guide
