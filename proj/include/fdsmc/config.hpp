#pragma once

// Flat key=value scenario configs. Unknown keys are hard errors so a typo
// never silently falls back to a default.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fdsmc/sim.hpp"

namespace fdsmc {

/// Schema violation; `key` names the offending config key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Parse config text (one `key = value` per line, '#' comments). Required
/// keys: mode, h, t_end. The result is validated.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

/// Every key in canonical order; parse(serialize(cfg)) == cfg.
std::string serialize_config(const ScenarioConfig& cfg);

/// Same content as serialize_config, one (key, value) pair per entry.
std::vector<std::pair<std::string, std::string>> config_pairs(
    const ScenarioConfig& cfg);

/// Range/consistency checks; throws ConfigError naming the key.
void validate_config(const ScenarioConfig& cfg);

std::string mode_name(Mode m);

}  // namespace fdsmc
