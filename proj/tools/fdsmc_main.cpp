// Experiment CLI: run scenario configs, replay named presets, render CSV
// columns as SVG. Exit codes: 0 success, 2 config/usage error, 3 simulation
// divergence.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fdsmc/config.hpp"
#include "fdsmc/csv.hpp"
#include "fdsmc/runner.hpp"
#include "fdsmc/svg.hpp"

namespace {

std::filesystem::path output_root() {
  if (const char* env = std::getenv("FDSMC_OUT_ROOT"); env && *env)
    return env;
  return "out";
}

int execute(fdsmc::ScenarioConfig cfg) {
  fdsmc::RunOutcome out = fdsmc::run_scenario(cfg);
  std::cout << "wrote " << out.artifacts.size() << " artifacts to "
            << out.out_dir << "\n";
  if (out.diverged)
    std::cerr << "simulation diverged; see manifest.json\n";
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delayed two-link robot: chaos and synchronization experiments"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run a scenario config file");
  run->add_option("config", config_path, "key = value scenario file")
      ->required();

  std::string preset_name, preset_out;
  auto* preset = app.add_subcommand("preset", "run a named preset");
  preset->add_option("name", preset_name, "preset name")->required();
  preset->add_option("--out", preset_out, "output directory");

  std::string plot_csv, plot_spec, plot_out;
  auto* plot = app.add_subcommand(
      "plot", "render a CSV as SVG; spec is kind:xcol:ycol[:title]");
  plot->add_option("csv", plot_csv, "input CSV")->required();
  plot->add_option("spec", plot_spec, "plot spec")->required();
  plot->add_option("--out", plot_out, "output SVG path");

  auto* list = app.add_subcommand("list-presets", "print preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& n : fdsmc::preset_names()) std::cout << n << "\n";
      return 0;
    }
    if (run->parsed()) {
      fdsmc::ScenarioConfig cfg = fdsmc::parse_config_file(config_path);
      if (cfg.out_dir.empty())
        cfg.out_dir = (output_root() / "run").string();
      return execute(std::move(cfg));
    }
    if (preset->parsed()) {
      if (!fdsmc::is_preset(preset_name)) {
        std::cerr << "unknown preset '" << preset_name
                  << "'; see list-presets\n";
        return 2;
      }
      fdsmc::ScenarioConfig cfg = fdsmc::preset_config(preset_name);
      cfg.out_dir = !preset_out.empty()
                        ? preset_out
                        : (output_root() / preset_name).string();
      return execute(std::move(cfg));
    }
    if (plot->parsed()) {
      fdsmc::CsvTable table = fdsmc::read_csv(plot_csv);
      fdsmc::PlotSpec spec = fdsmc::parse_plot_spec(plot_spec, table);
      std::string out = plot_out;
      if (out.empty())
        out = std::filesystem::path(plot_csv)
                  .replace_extension(".svg")
                  .string();
      fdsmc::write_plot_svg(out, table, spec);
      std::cout << "wrote " << out << "\n";
      return 0;
    }
  } catch (const fdsmc::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
