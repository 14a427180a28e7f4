#include "l0guide/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace l0guide;

// A subcommand takes either a config file or a named preset, not both.
std::string load_input(const std::string& file, const std::string& preset) {
  if (file.empty() == preset.empty())
    throw GuidanceError(ErrorKind::ParseError, "give exactly one of <config-file> or --preset");
  return preset.empty() ? read_text_file(file) : preset_text(preset);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable look-ahead path-following guidance: simulation and envelope analysis"};
  app.require_subcommand(1);

  std::string file, preset, out_dir, ratios;

  auto* simulate = app.add_subcommand("simulate", "Fly a scenario with one or two look-ahead profiles");
  simulate->add_option("scenario-file", file, "Sectioned key=value scenario");
  simulate->add_option("--preset", preset, "straight_line_table2 | ellipse_table2");
  simulate->add_option("--out", out_dir, "Output directory")->required();

  auto* envelope = app.add_subcommand("envelope", "Map saturated and unsaturated regions of the error plane");
  envelope->add_option("config-file", file, "Sectioned key=value envelope config");
  envelope->add_option("--preset", preset, "envelope_ratio3");
  envelope->add_option("--out", out_dir, "Output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Envelope gain versus L_max / L_min");
  sweep->add_option("config-file", file, "Sectioned key=value envelope config");
  sweep->add_option("--preset", preset, "envelope_ratio3");
  sweep->add_option("--ratios", ratios, "a:b:step")->required();
  sweep->add_option("--out", out_dir, "Output directory")->required();

  std::string preset_name;
  auto* show = app.add_subcommand("preset", "Print a preset configuration");
  show->add_option("name", preset_name, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*show) {
      std::cout << preset_text(preset_name);
    } else if (*simulate) {
      run_simulate_command(parse_scenario(load_input(file, preset)), out_dir, std::cout);
    } else if (*envelope) {
      run_envelope_command(parse_envelope_config(load_input(file, preset)), out_dir, std::cout);
    } else if (*sweep) {
      const std::vector<double> series = parse_ratio_range(ratios);
      run_sweep_command(parse_envelope_config(load_input(file, preset)), series, out_dir, std::cout);
    }
  } catch (const GuidanceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}
