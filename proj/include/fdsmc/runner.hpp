#pragma once

// Scenario execution end to end: simulate, run the requested diagnostics,
// write CSV/SVG artifacts plus a JSON manifest into the output directory.
// Also owns the named presets behind the CLI.

#include <string>
#include <vector>

#include "fdsmc/sim.hpp"

namespace fdsmc {

inline constexpr int kManifestSchemaVersion = 1;

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 3 simulation divergence
  bool diverged = false;
  std::string out_dir;
  // Relative artifact file names, in write order; manifest.json last.
  std::vector<std::string> artifacts;
};

/// Validates cfg (ConfigError on violation, before anything is written),
/// creates cfg.out_dir, runs the scenario and writes every artifact there.
/// Divergence is reported through the outcome and manifest, not an
/// exception.
RunOutcome run_scenario(const ScenarioConfig& cfg);

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);

/// Named preset with out_dir left empty for the caller to fill. Throws
/// std::invalid_argument on an unknown name.
ScenarioConfig preset_config(const std::string& name);

}  // namespace fdsmc
