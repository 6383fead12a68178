#include "fdsmc/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "fdsmc/chaos.hpp"
#include "fdsmc/config.hpp"
#include "fdsmc/csv.hpp"
#include "fdsmc/robot.hpp"
#include "fdsmc/svg.hpp"

namespace fdsmc {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr double kRmsWindowStart = 10.0;   // steady-state window for RMS
constexpr double kReachBand = 0.05;        // |S| threshold for reaching time

struct ArtifactWriter {
  fs::path dir;
  bool plots = false;
  std::vector<std::string> names;

  std::string path(const std::string& name) {
    names.push_back(name);
    return (dir / name).string();
  }

  void table(const std::string& name, const std::vector<std::string>& header,
             const std::vector<std::vector<double>>& rows,
             const std::vector<std::string>& comments = {}) {
    write_csv(path(name), header, rows, comments);
  }

  // One SVG per CSV, fixed view; `stem.csv` -> `stem.svg`.
  void plot(const std::string& csv_name, const CsvTable& data,
            PlotSpec spec) {
    if (!plots) return;
    std::string stem = csv_name.substr(0, csv_name.rfind('.'));
    if (spec.xlabel.empty()) spec.xlabel = data.header[spec.xcol];
    if (spec.ylabel.empty()) spec.ylabel = data.header[spec.ycol];
    write_plot_svg(path(stem + ".svg"), data, spec);
  }
};

// Every stride-th record of the trajectory mapped through `row`.
template <typename RowFn>
std::vector<std::vector<double>> stride_map(const Trajectory& tr, int stride,
                                            RowFn row) {
  std::vector<std::vector<double>> out;
  for (std::size_t j = 0; j < tr.size(); j += static_cast<std::size_t>(stride))
    out.push_back(row(j));
  return out;
}

CsvTable as_table(std::vector<std::string> header,
                  std::vector<std::vector<double>> rows) {
  CsvTable t;
  t.header = std::move(header);
  t.rows = std::move(rows);
  return t;
}

// theta2 series of the trajectory, transient discarded, resampled on the
// diagnostics grid.
std::vector<double> diagnostics_series(const Trajectory& tr,
                                       const DiagnosticsOptions& d) {
  const auto step = static_cast<std::size_t>(std::llround(d.downsample_dt / tr.h));
  const auto j0 = static_cast<std::size_t>(
      std::llround(std::ceil(d.discard_time / tr.h - 1e-9)));
  std::vector<double> out;
  for (std::size_t j = j0; j < tr.size(); j += step)
    out.push_back(tr.state[j].theta[1]);
  return out;
}

int embed_delay_samples(const std::vector<double>& series,
                        const DiagnosticsOptions& d) {
  if (d.embed_delay > 0.0)
    return static_cast<int>(std::llround(d.embed_delay / d.downsample_dt));
  const int cap =
      static_cast<int>(std::llround(d.embed_delay_cap / d.downsample_dt));
  return autocorr_first_zero(series, cap);
}

// Least-squares slope of the stored divergence curve over the fit window;
// identical arithmetic to the estimator so the manifest scalar can be
// recomputed from lyapunov.csv alone.
double slope_from_curve(const std::vector<double>& y, double dt,
                        std::size_t i0, std::size_t i1) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (std::size_t i = i0; i <= i1 && i < y.size(); ++i) {
    const double x = static_cast<double>(i) * dt;
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
    n += 1.0;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

RunOutcome run_scenario(const ScenarioConfig& cfg) {
  validate_config(cfg);
  if (cfg.out_dir.empty())
    throw ConfigError("out_dir", "must not be empty for a run");

  const auto wall_start = std::chrono::steady_clock::now();
  fs::create_directories(cfg.out_dir);

  SimResult res = simulate(cfg);
  const Trajectory& pr = res.primary;
  const bool pair = cfg.mode != Mode::single_pd;
  const bool fdsmc_mode = cfg.mode == Mode::master_slave_fdsmc;
  const int stride = cfg.csv_stride;

  ArtifactWriter w{fs::path(cfg.out_dir), cfg.write_plots};
  ordered_json results = ordered_json::object();

  const RobotParams plant = inject_uncertainty(cfg);
  const RobotParams nominal = RobotParams::nominal();

  if (!pair) {
    write_trajectory_csv(w.path("trajectory.csv"), pr, stride);
    w.plot("trajectory.csv",
           as_table({"t", "theta2"},
                    stride_map(pr, stride,
                               [&](std::size_t j) -> std::vector<double> {
                                 return {pr.t[j], pr.state[j].theta[1]};
                               })),
           {PlotSpec::Kind::line, 0, 1, "link 2 angle"});

    auto th2 = stride_map(pr, stride, [&](std::size_t j) -> std::vector<double> {
      return {pr.t[j], pr.state[j].theta[1]};
    });
    w.table("theta2.csv", {"t", "theta2"}, th2);

    auto ws = stride_map(pr, stride, [&](std::size_t j) -> std::vector<double> {
      Vec2 p = fk_endeffector(plant, pr.state[j].theta);
      return {pr.t[j], p[0], p[1]};
    });
    w.table("workspace.csv", {"t", "x", "y"}, ws);
    w.plot("workspace.csv", as_table({"t", "x", "y"}, ws),
           {PlotSpec::Kind::line, 1, 2, "end-effector path"});

    std::vector<double> tau1, tau2;
    for (std::size_t j = 0; j < pr.size(); j += static_cast<std::size_t>(stride)) {
      tau1.push_back(pr.tau_applied[j][0]);
      tau2.push_back(pr.tau_applied[j][1]);
    }
    results["tv_tau1"] = total_variation(tau1);
    results["tv_tau2"] = total_variation(tau2);
  } else {
    const Trajectory& ms = *res.master;
    write_trajectory_csv(w.path("master.csv"), ms, stride);
    write_trajectory_csv(w.path("slave.csv"), pr, stride);

    auto err = stride_map(pr, stride, [&](std::size_t j) -> std::vector<double> {
      const JointState &m = ms.state[j], &s = pr.state[j];
      return {pr.t[j], m.theta[0] - s.theta[0], m.theta[1] - s.theta[1],
              m.omega[0] - s.omega[0], m.omega[1] - s.omega[1]};
    });
    w.table("error.csv", {"t", "e1", "e2", "edot1", "edot2"}, err);
    w.plot("error.csv", as_table({"t", "e1", "e2", "edot1", "edot2"}, err),
           {PlotSpec::Kind::line, 0, 2, "tracking error, link 2"});

    auto ws = stride_map(pr, stride, [&](std::size_t j) -> std::vector<double> {
      Vec2 pm = fk_endeffector(nominal, ms.state[j].theta);
      Vec2 ps = fk_endeffector(plant, pr.state[j].theta);
      return {pr.t[j], pm[0], pm[1], ps[0], ps[1]};
    });
    w.table("workspace.csv", {"t", "xm", "ym", "xs", "ys"}, ws);
    w.plot("workspace.csv", as_table({"t", "xm", "ym", "xs", "ys"}, ws),
           {PlotSpec::Kind::line, 3, 4, "slave end-effector path"});

    if (!res.diverged) {
      // Scalars come from the exported rows, so each one is recomputable
      // from the CSVs alone.
      std::vector<double> e1, e2;
      for (const auto& r : err)
        if (r[0] >= kRmsWindowStart) {
          e1.push_back(r[1]);
          e2.push_back(r[2]);
        }
      results["rms_link1"] = rms(e1);
      results["rms_link2"] = rms(e2);

      std::vector<double> tau1, tau2;
      for (std::size_t j = 0; j < pr.size();
           j += static_cast<std::size_t>(stride))
        if (pr.t[j] >= cfg.activation_time) {
          tau1.push_back(pr.tau_applied[j][0]);
          tau2.push_back(pr.tau_applied[j][1]);
        }
      results["tv_tau1"] = total_variation(tau1);
      results["tv_tau2"] = total_variation(tau2);

      if (fdsmc_mode) {
        results["reaching_time"] = nullptr;
        for (std::size_t j = 0; j < pr.size();
             j += static_cast<std::size_t>(stride))
          if (pr.surface_valid[j] &&
              max_abs(pr.surface[j]) < kReachBand) {
            results["reaching_time"] = pr.t[j];
            break;
          }
      }
    }
  }

  const DiagnosticsOptions& d = cfg.diag;
  if (!res.diverged) {
    const bool need_series = d.lyapunov || d.embedding || d.phase;
    std::vector<double> series;
    if (need_series) series = diagnostics_series(pr, d);

    if (d.phase) {
      const auto step =
          static_cast<std::size_t>(std::llround(d.downsample_dt / pr.h));
      const auto j0 = static_cast<std::size_t>(
          std::llround(std::ceil(d.discard_time / pr.h - 1e-9)));
      std::vector<std::vector<double>> rows;
      for (std::size_t j = j0; j < pr.size(); j += step)
        rows.push_back({pr.t[j], pr.state[j].theta[1], pr.state[j].omega[1]});
      w.table("phase.csv", {"t", "theta2", "omega2"}, rows);
      w.plot("phase.csv", as_table({"t", "theta2", "omega2"}, rows),
             {PlotSpec::Kind::line, 1, 2, "link 2 phase portrait"});
    }

    if (d.embedding) {
      const int tau = embed_delay_samples(series, d);
      PointSet ps = delay_embed(series, {d.embed_dim, tau});
      std::vector<std::string> header;
      for (int c = 0; c < ps.dim; ++c) header.push_back("x" + std::to_string(c));
      std::vector<std::vector<double>> rows(ps.count());
      for (std::size_t r = 0; r < ps.count(); ++r)
        for (int c = 0; c < ps.dim; ++c) rows[r].push_back(ps.at(r, c));
      w.table("embedding.csv", header, rows,
              {"delay_samples = " + std::to_string(tau)});
      w.plot("embedding.csv", as_table(header, rows),
             {PlotSpec::Kind::scatter, 0, 1, "delay embedding"});
    }

    if (d.lyapunov) {
      const int tau = embed_delay_samples(series, d);
      const int theiler =
          static_cast<int>(std::llround(d.theiler_time / d.downsample_dt));
      LyapunovEstimate est =
          max_lyapunov(series, d.downsample_dt, {d.embed_dim, tau}, theiler,
                       d.lyap_fit_t0, d.lyap_fit_t1);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < est.mean_log_div.size(); ++i)
        rows.push_back(
            {static_cast<double>(i) * est.dt, est.mean_log_div[i]});
      w.table("lyapunov.csv", {"t", "mean_log_div"}, rows,
              {"lambda_max = " + format_double(est.exponent),
               "fit_window_s = [" + format_double(d.lyap_fit_t0) + ", " +
                   format_double(d.lyap_fit_t1) + "]"});
      w.plot("lyapunov.csv", as_table({"t", "mean_log_div"}, rows),
             {PlotSpec::Kind::line, 0, 1, "mean log divergence"});
      results["lambda_max"] = est.exponent;
    }

    if (d.poincare) {
      std::vector<Vec2> pts =
          poincare_section(tail_from(pr, d.discard_time), d.poincare_plane,
                           d.poincare_direction);
      std::vector<std::vector<double>> rows;
      for (Vec2 p : pts) rows.push_back({p[0], p[1]});
      w.table("poincare.csv", {"theta2", "omega2"}, rows);
      w.plot("poincare.csv", as_table({"theta2", "omega2"}, rows),
             {PlotSpec::Kind::scatter, 0, 1, "Poincare section"});
    }

    if (d.bifurcation) {
      const std::vector<double> grid = bifurcation_grid(d);
      const auto maxima = bifurcation_sweep(cfg, grid);
      std::vector<std::vector<double>> rows;
      for (std::size_t k = 0; k < grid.size(); ++k)
        for (double m : maxima[k]) rows.push_back({grid[k], m});
      w.table("bifurcation.csv", {"L", "theta2_max"}, rows);
      w.plot("bifurcation.csv", as_table({"L", "theta2_max"}, rows),
             {PlotSpec::Kind::scatter, 0, 1, "theta2 maxima vs dead time"});
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    wall_start)
          .count();

  ordered_json manifest;
  manifest["schema_version"] = kManifestSchemaVersion;
  ordered_json cfg_echo;
  for (const auto& [k, v] : config_pairs(cfg)) cfg_echo[k] = v;
  manifest["config"] = std::move(cfg_echo);
  manifest["artifacts"] = w.names;
  manifest["results"] = std::move(results);
  manifest["failed"] = res.diverged;
  if (res.diverged)
    manifest["divergence_time"] = res.diverged_time;
  else
    manifest["divergence_time"] = nullptr;
  manifest["wall_clock_seconds"] = wall;

  std::vector<std::string> artifacts = w.names;
  {
    std::ofstream out(w.path("manifest.json"), std::ios::binary);
    out << manifest.dump(2) << '\n';
  }
  artifacts.push_back("manifest.json");

  RunOutcome outcome;
  outcome.exit_code = res.diverged ? 3 : 0;
  outcome.diverged = res.diverged;
  outcome.out_dir = cfg.out_dir;
  outcome.artifacts = std::move(artifacts);
  return outcome;
}

namespace {

ScenarioConfig sync_base() {
  ScenarioConfig c;
  c.mode = Mode::master_slave_fdsmc;
  c.t_end = 100.0;
  c.delay_applies_to_control = false;
  c.csv_stride = 4;
  return c;
}

ScenarioConfig chaos_base(double t_end) {
  ScenarioConfig c;
  c.mode = Mode::single_pd;
  c.t_end = t_end;
  c.csv_stride = 4;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2-chaotic", "fig3a-bifurcation", "fig3b-embedding",
          "fig4-poincare", "fig5-sync",        "fig6-surfaces",
          "fig7-attractor", "fig8-uncertain"};
}

bool is_preset(const std::string& name) {
  for (const auto& n : preset_names())
    if (n == name) return true;
  return false;
}

ScenarioConfig preset_config(const std::string& name) {
  if (name == "fig2-chaotic") {
    // Chaotic joint motion and workspace path at L = 0.015.
    return chaos_base(200.0);
  }
  if (name == "fig3a-bifurcation") {
    // theta2 maxima against dead time; the sweep is the artifact, the main
    // run is kept minimal.
    ScenarioConfig c = chaos_base(2.0);
    c.csv_stride = 1;
    c.diag.bifurcation = true;
    return c;
  }
  if (name == "fig3b-embedding") {
    ScenarioConfig c = chaos_base(400.0);
    c.diag.embedding = true;
    c.diag.embed_delay = 5.0;
    return c;
  }
  if (name == "fig4-poincare") {
    ScenarioConfig c = chaos_base(400.0);
    c.diag.poincare = true;
    c.diag.phase = true;
    c.diag.lyapunov = true;
    return c;
  }
  if (name == "fig5-sync") {
    return sync_base();
  }
  if (name == "fig6-surfaces") {
    // Full-rate export so the sliding surfaces and torque traces keep every
    // sample.
    ScenarioConfig c = sync_base();
    c.csv_stride = 1;
    return c;
  }
  if (name == "fig7-attractor") {
    ScenarioConfig c = sync_base();
    c.csv_stride = 20;
    c.diag.phase = true;
    c.diag.embedding = true;
    c.diag.embed_delay = 5.0;
    c.diag.lyapunov = true;
    c.diag.discard_time = 10.0;
    return c;
  }
  if (name == "fig8-uncertain") {
    ScenarioConfig c = sync_base();
    c.uncertainty = true;
    return c;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace fdsmc
