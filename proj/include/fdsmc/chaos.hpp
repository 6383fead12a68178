#pragma once

// Chaos diagnostics over sampled series: delay embedding, Rosenstein-style
// largest Lyapunov exponent, Poincare section, dead-time bifurcation sweep,
// and the scalar run metrics (RMS, total variation).

#include <cstddef>
#include <vector>

#include "fdsmc/exec.hpp"
#include "fdsmc/sim.hpp"
#include "fdsmc/vec2.hpp"

namespace fdsmc {

struct EmbeddingSpec {
  int dim = 4;
  int delay_samples = 1;
};

/// Row-major point set in R^dim.
struct PointSet {
  int dim = 0;
  std::vector<double> xs;

  std::size_t count() const {
    return dim > 0 ? xs.size() / static_cast<std::size_t>(dim) : 0;
  }
  double at(std::size_t row, int col) const {
    return xs[row * static_cast<std::size_t>(dim) +
              static_cast<std::size_t>(col)];
  }
};

/// Points x_j = (s_j, s_{j+tau}, ..., s_{j+(dim-1)tau}).
PointSet delay_embed(const std::vector<double>& x, const EmbeddingSpec& spec);

/// Index of the first non-positive autocorrelation lag, capped; at least 1.
int autocorr_first_zero(const std::vector<double>& x, int cap);

struct LyapunovEstimate {
  double exponent = 0.0;         // 1/s
  double dt = 0.0;
  std::size_t fit_i0 = 0;        // fit window, in curve samples
  std::size_t fit_i1 = 0;
  std::vector<double> mean_log_div;  // mean ln separation at i*dt
};

/// Rosenstein estimate: embed, nearest neighbor outside the Theiler window,
/// mean log divergence over the horizon fit_t1, least-squares slope over
/// [fit_t0, fit_t1]. Pairs with zero separation are excluded from the mean.
/// Throws if the series is too short or no valid neighbor pair exists.
LyapunovEstimate max_lyapunov(const std::vector<double>& x, double dt,
                              const EmbeddingSpec& spec, int theiler,
                              double fit_t0, double fit_t1,
                              Exec exec = Exec::parallel);

/// Crossings of the plane theta1 = plane_value taken in the given direction
/// (+1: theta1 rising), linearly interpolated; returns (theta2, omega2).
std::vector<Vec2> poincare_section(const Trajectory& traj, double plane_value,
                                   int direction);

/// Values of strict local maxima (left-strict; a plateau counts once, at its
/// first sample).
std::vector<double> local_maxima(const std::vector<double>& x);

/// Dead-time grid l_min, l_min+l_step, ..., up to and including l_max.
std::vector<double> bifurcation_grid(const DiagnosticsOptions& d);

/// For each dead time in L_grid, run the single-robot PD scenario from the
/// template config for diag.bifurcation_t_end seconds and collect theta2
/// local maxima after diag.discard_time. Grid points run independently; the
/// result order follows L_grid regardless of execution order.
std::vector<std::vector<double>> bifurcation_sweep(
    const ScenarioConfig& base, const std::vector<double>& L_grid,
    Exec exec = Exec::parallel);

double rms(const std::vector<double>& x);
double total_variation(const std::vector<double>& x);

/// Every stride-th sample, starting at index 0.
std::vector<double> downsample(const std::vector<double>& x, int stride);

}  // namespace fdsmc
