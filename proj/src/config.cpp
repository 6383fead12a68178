#include "fdsmc/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "fdsmc/chaos.hpp"
#include "fdsmc/csv.hpp"  // format_double

namespace fdsmc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& val) {
  char* end = nullptr;
  const double v = std::strtod(val.c_str(), &end);
  if (end == val.c_str() || *end != '\0')
    throw ConfigError(key, "expected a number, got '" + val + "'");
  return v;
}

long to_long(const std::string& key, const std::string& val) {
  char* end = nullptr;
  const long v = std::strtol(val.c_str(), &end, 10);
  if (end == val.c_str() || *end != '\0')
    throw ConfigError(key, "expected an integer, got '" + val + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& val) {
  if (val == "true") return true;
  if (val == "false") return false;
  throw ConfigError(key, "expected true or false, got '" + val + "'");
}

Mode to_mode(const std::string& key, const std::string& val) {
  if (val == "single_pd") return Mode::single_pd;
  if (val == "master_slave_fdsmc") return Mode::master_slave_fdsmc;
  if (val == "master_slave_smc_baseline")
    return Mode::master_slave_smc_baseline;
  throw ConfigError(key,
                    "expected one of single_pd, master_slave_fdsmc, "
                    "master_slave_smc_baseline; got '" +
                        val + "'");
}

bool is_multiple(double value, double h) {
  const double ratio = value / h;
  const double rounded = std::round(ratio);
  return std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, rounded);
}

void apply(ScenarioConfig& c, const std::string& key, const std::string& val) {
  if (key == "mode") c.mode = to_mode(key, val);
  else if (key == "h") c.h = to_double(key, val);
  else if (key == "t_end") c.t_end = to_double(key, val);
  else if (key == "L_master") c.L_master = to_double(key, val);
  else if (key == "L_slave") c.L_slave = to_double(key, val);
  else if (key == "pd_kp") c.pd.Kp = to_double(key, val);
  else if (key == "pd_kd") c.pd.Kd = to_double(key, val);
  else if (key == "fdsmc_ks") c.fdsmc.Ks = to_double(key, val);
  else if (key == "fdsmc_kp") c.fdsmc.Kp = to_double(key, val);
  else if (key == "fdsmc_kd") c.fdsmc.Kd = to_double(key, val);
  else if (key == "fdsmc_kf") c.fdsmc.Kf = to_double(key, val);
  else if (key == "fdsmc_lambda") c.fdsmc.lambda = to_double(key, val);
  else if (key == "smc_c") c.smc.c = to_double(key, val);
  else if (key == "smc_k") c.smc.K = to_double(key, val);
  else if (key == "activation_time") c.activation_time = to_double(key, val);
  else if (key == "uncertainty") c.uncertainty = to_bool(key, val);
  else if (key == "delay_applies_to_control")
    c.delay_applies_to_control = to_bool(key, val);
  else if (key == "memory_len") {
    const long v = to_long(key, val);
    if (v < 0) throw ConfigError(key, "must be >= 0");
    c.memory_len = static_cast<std::size_t>(v);
  } else if (key == "theta1_0") c.theta0[0] = to_double(key, val);
  else if (key == "theta2_0") c.theta0[1] = to_double(key, val);
  else if (key == "omega1_0") c.omega0[0] = to_double(key, val);
  else if (key == "omega2_0") c.omega0[1] = to_double(key, val);
  else if (key == "csv_stride") c.csv_stride = static_cast<int>(to_long(key, val));
  else if (key == "write_plots") c.write_plots = to_bool(key, val);
  else if (key == "out_dir") c.out_dir = val;
  else if (key == "diag_lyapunov") c.diag.lyapunov = to_bool(key, val);
  else if (key == "diag_poincare") c.diag.poincare = to_bool(key, val);
  else if (key == "diag_embedding") c.diag.embedding = to_bool(key, val);
  else if (key == "diag_phase") c.diag.phase = to_bool(key, val);
  else if (key == "diag_bifurcation") c.diag.bifurcation = to_bool(key, val);
  else if (key == "diag_discard_time") c.diag.discard_time = to_double(key, val);
  else if (key == "diag_downsample_dt") c.diag.downsample_dt = to_double(key, val);
  else if (key == "diag_embed_dim") c.diag.embed_dim = static_cast<int>(to_long(key, val));
  else if (key == "diag_embed_delay") c.diag.embed_delay = to_double(key, val);
  else if (key == "diag_embed_delay_cap") c.diag.embed_delay_cap = to_double(key, val);
  else if (key == "diag_theiler_time") c.diag.theiler_time = to_double(key, val);
  else if (key == "diag_lyap_fit_t0") c.diag.lyap_fit_t0 = to_double(key, val);
  else if (key == "diag_lyap_fit_t1") c.diag.lyap_fit_t1 = to_double(key, val);
  else if (key == "diag_poincare_plane") c.diag.poincare_plane = to_double(key, val);
  else if (key == "diag_poincare_direction")
    c.diag.poincare_direction = static_cast<int>(to_long(key, val));
  else if (key == "diag_bifurcation_l_min") c.diag.bifurcation_l_min = to_double(key, val);
  else if (key == "diag_bifurcation_l_max") c.diag.bifurcation_l_max = to_double(key, val);
  else if (key == "diag_bifurcation_l_step") c.diag.bifurcation_l_step = to_double(key, val);
  else if (key == "diag_bifurcation_t_end") c.diag.bifurcation_t_end = to_double(key, val);
  else throw ConfigError(key, "unknown key");
}

}  // namespace

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::single_pd: return "single_pd";
    case Mode::master_slave_fdsmc: return "master_slave_fdsmc";
    case Mode::master_slave_smc_baseline: return "master_slave_smc_baseline";
  }
  return "single_pd";
}

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "empty key");
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    apply(cfg, key, val);
  }
  for (const char* req : {"mode", "h", "t_end"})
    if (!seen.count(req)) throw ConfigError(req, "missing required key");
  validate_config(cfg);
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config", "cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

void validate_config(const ScenarioConfig& c) {
  if (!(c.h > 0.0)) throw ConfigError("h", "must be > 0");
  if (!(c.t_end >= 0.0)) throw ConfigError("t_end", "must be >= 0");
  if (c.L_master < 0.0) throw ConfigError("L_master", "must be >= 0");
  if (c.L_slave < 0.0) throw ConfigError("L_slave", "must be >= 0");
  if (!is_multiple(c.L_master, c.h))
    throw ConfigError("L_master", "must be an integer multiple of h");
  if (!is_multiple(c.L_slave, c.h))
    throw ConfigError("L_slave", "must be an integer multiple of h");
  if (!(c.pd.Kp > 0.0)) throw ConfigError("pd_kp", "must be > 0");
  if (!(c.pd.Kd > 0.0)) throw ConfigError("pd_kd", "must be > 0");
  if (c.fdsmc.Ks < 0.0) throw ConfigError("fdsmc_ks", "must be >= 0");
  if (!(c.fdsmc.Kp > 0.0)) throw ConfigError("fdsmc_kp", "must be > 0");
  if (!(c.fdsmc.Kd > 0.0)) throw ConfigError("fdsmc_kd", "must be > 0");
  if (!(c.fdsmc.Kf > 0.0)) throw ConfigError("fdsmc_kf", "must be > 0");
  if (!(c.fdsmc.lambda > 0.0 && c.fdsmc.lambda < 1.0))
    throw ConfigError("fdsmc_lambda", "must lie in (0,1)");
  if (!(c.smc.c > 0.0)) throw ConfigError("smc_c", "must be > 0");
  if (!(c.smc.K > 0.0)) throw ConfigError("smc_k", "must be > 0");
  if (c.activation_time < 0.0)
    throw ConfigError("activation_time", "must be >= 0");
  if (c.memory_len < 1) throw ConfigError("memory_len", "must be >= 1");
  if (c.csv_stride < 1) throw ConfigError("csv_stride", "must be >= 1");
  if (c.out_dir.find('\n') != std::string::npos)
    throw ConfigError("out_dir", "must not contain newlines");

  const auto& d = c.diag;
  if (d.discard_time < 0.0)
    throw ConfigError("diag_discard_time", "must be >= 0");
  if (!(d.downsample_dt > 0.0))
    throw ConfigError("diag_downsample_dt", "must be > 0");
  if ((d.lyapunov || d.embedding || d.phase) &&
      !is_multiple(d.downsample_dt, c.h))
    throw ConfigError("diag_downsample_dt", "must be an integer multiple of h");
  if (d.embed_dim < 2) throw ConfigError("diag_embed_dim", "must be >= 2");
  if (d.embed_delay < 0.0)
    throw ConfigError("diag_embed_delay", "must be >= 0 (0 = autocorrelation)");
  if (!(d.embed_delay_cap > 0.0))
    throw ConfigError("diag_embed_delay_cap", "must be > 0");
  if (d.theiler_time < 0.0)
    throw ConfigError("diag_theiler_time", "must be >= 0");
  if (d.lyap_fit_t0 < 0.0)
    throw ConfigError("diag_lyap_fit_t0", "must be >= 0");
  if (!(d.lyap_fit_t1 > d.lyap_fit_t0))
    throw ConfigError("diag_lyap_fit_t1", "must be > diag_lyap_fit_t0");
  if (d.poincare_direction != 1 && d.poincare_direction != -1)
    throw ConfigError("diag_poincare_direction", "must be 1 or -1");
  if (d.bifurcation) {
    if (!(d.bifurcation_l_step > 0.0))
      throw ConfigError("diag_bifurcation_l_step", "must be > 0");
    if (d.bifurcation_l_min > d.bifurcation_l_max)
      throw ConfigError("diag_bifurcation_l_min", "must be <= diag_bifurcation_l_max");
    if (!(d.bifurcation_t_end > d.discard_time))
      throw ConfigError("diag_bifurcation_t_end", "must exceed diag_discard_time");
    for (double L : bifurcation_grid(d))
      if (!is_multiple(L, c.h))
        throw ConfigError("diag_bifurcation_l_step",
                          "grid point not an integer multiple of h");
  }
}

std::vector<std::pair<std::string, std::string>> config_pairs(
    const ScenarioConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  auto num = [&](const char* k, double v) { out.emplace_back(k, format_double(v)); };
  auto integer = [&](const char* k, long v) { out.emplace_back(k, std::to_string(v)); };
  auto boolean = [&](const char* k, bool v) { out.emplace_back(k, v ? "true" : "false"); };
  out.emplace_back("mode", mode_name(c.mode));
  num("h", c.h);
  num("t_end", c.t_end);
  num("L_master", c.L_master);
  num("L_slave", c.L_slave);
  num("pd_kp", c.pd.Kp);
  num("pd_kd", c.pd.Kd);
  num("fdsmc_ks", c.fdsmc.Ks);
  num("fdsmc_kp", c.fdsmc.Kp);
  num("fdsmc_kd", c.fdsmc.Kd);
  num("fdsmc_kf", c.fdsmc.Kf);
  num("fdsmc_lambda", c.fdsmc.lambda);
  num("smc_c", c.smc.c);
  num("smc_k", c.smc.K);
  num("activation_time", c.activation_time);
  boolean("uncertainty", c.uncertainty);
  boolean("delay_applies_to_control", c.delay_applies_to_control);
  integer("memory_len", static_cast<long>(c.memory_len));
  num("theta1_0", c.theta0[0]);
  num("theta2_0", c.theta0[1]);
  num("omega1_0", c.omega0[0]);
  num("omega2_0", c.omega0[1]);
  integer("csv_stride", c.csv_stride);
  boolean("write_plots", c.write_plots);
  out.emplace_back("out_dir", c.out_dir);
  boolean("diag_lyapunov", c.diag.lyapunov);
  boolean("diag_poincare", c.diag.poincare);
  boolean("diag_embedding", c.diag.embedding);
  boolean("diag_phase", c.diag.phase);
  boolean("diag_bifurcation", c.diag.bifurcation);
  num("diag_discard_time", c.diag.discard_time);
  num("diag_downsample_dt", c.diag.downsample_dt);
  integer("diag_embed_dim", c.diag.embed_dim);
  num("diag_embed_delay", c.diag.embed_delay);
  num("diag_embed_delay_cap", c.diag.embed_delay_cap);
  num("diag_theiler_time", c.diag.theiler_time);
  num("diag_lyap_fit_t0", c.diag.lyap_fit_t0);
  num("diag_lyap_fit_t1", c.diag.lyap_fit_t1);
  num("diag_poincare_plane", c.diag.poincare_plane);
  integer("diag_poincare_direction", c.diag.poincare_direction);
  num("diag_bifurcation_l_min", c.diag.bifurcation_l_min);
  num("diag_bifurcation_l_max", c.diag.bifurcation_l_max);
  num("diag_bifurcation_l_step", c.diag.bifurcation_l_step);
  num("diag_bifurcation_t_end", c.diag.bifurcation_t_end);
  return out;
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream o;
  for (const auto& [k, v] : config_pairs(c)) o << k << " = " << v << '\n';
  return o.str();
}

}  // namespace fdsmc
