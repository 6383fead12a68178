#include "fdsmc/chaos.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdsmc {

PointSet delay_embed(const std::vector<double>& x, const EmbeddingSpec& spec) {
  if (spec.dim < 2) throw std::invalid_argument("delay_embed: dim must be >= 2");
  if (spec.delay_samples < 1)
    throw std::invalid_argument("delay_embed: delay_samples must be >= 1");
  const std::size_t span =
      static_cast<std::size_t>(spec.dim - 1) *
      static_cast<std::size_t>(spec.delay_samples);
  if (x.size() <= span)
    throw std::invalid_argument("delay_embed: series shorter than the embedding span");
  const std::size_t n = x.size() - span;
  PointSet out;
  out.dim = spec.dim;
  out.xs.resize(n * static_cast<std::size_t>(spec.dim));
  for (std::size_t j = 0; j < n; ++j)
    for (int k = 0; k < spec.dim; ++k)
      out.xs[j * static_cast<std::size_t>(spec.dim) + static_cast<std::size_t>(k)] =
          x[j + static_cast<std::size_t>(k) *
                    static_cast<std::size_t>(spec.delay_samples)];
  return out;
}

int autocorr_first_zero(const std::vector<double>& x, int cap) {
  if (cap < 1) throw std::invalid_argument("autocorr_first_zero: cap must be >= 1");
  if (x.size() < 2) return 1;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double denom = 0.0;
  for (double v : x) denom += (v - mean) * (v - mean);
  if (denom == 0.0) return 1;  // constant series: any lag works
  const int kmax = std::min<int>(cap, static_cast<int>(x.size()) - 1);
  for (int k = 1; k <= kmax; ++k) {
    double c = 0.0;
    for (std::size_t j = 0; j + static_cast<std::size_t>(k) < x.size(); ++j)
      c += (x[j] - mean) * (x[j + static_cast<std::size_t>(k)] - mean);
    if (c <= 0.0) return k;
  }
  return cap;
}

namespace {

// squared distance between embedded points j and k; X(j, c) = x[j + c*delay]
inline double dist2(const std::vector<double>& x, std::size_t j, std::size_t k,
                    int dim, int delay) {
  double s = 0.0;
  for (int c = 0; c < dim; ++c) {
    const std::size_t off = static_cast<std::size_t>(c) * static_cast<std::size_t>(delay);
    const double d = x[j + off] - x[k + off];
    s += d * d;
  }
  return s;
}

}  // namespace

LyapunovEstimate max_lyapunov(const std::vector<double>& x, double dt,
                              const EmbeddingSpec& spec, int theiler,
                              double fit_t0, double fit_t1, Exec exec) {
  if (!(dt > 0.0)) throw std::invalid_argument("max_lyapunov: dt must be positive");
  if (spec.dim < 2 || spec.delay_samples < 1)
    throw std::invalid_argument("max_lyapunov: bad embedding spec");
  if (theiler < 0) throw std::invalid_argument("max_lyapunov: theiler must be >= 0");
  if (!(fit_t1 > fit_t0) || fit_t0 < 0.0)
    throw std::invalid_argument("max_lyapunov: bad fit range");

  const std::size_t span =
      static_cast<std::size_t>(spec.dim - 1) *
      static_cast<std::size_t>(spec.delay_samples);
  const std::size_t imax = static_cast<std::size_t>(std::llround(fit_t1 / dt));
  if (imax < 1) throw std::invalid_argument("max_lyapunov: fit window below dt");
  if (x.size() < span + imax + 2)
    throw std::invalid_argument("max_lyapunov: series too short");
  const std::size_t n_embed = x.size() - span;
  const std::size_t m = n_embed - imax;  // points with a full horizon ahead
  if (m < 2) throw std::invalid_argument("max_lyapunov: series too short");

  // nearest neighbor outside the Theiler window, per reference point
  std::vector<std::size_t> nn(m);
  std::vector<double> nnd2(m);
  auto find_neighbor = [&](std::size_t j) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = j;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t gap = j > k ? j - k : k - j;
      if (gap <= static_cast<std::size_t>(theiler)) continue;
      const double d2 = dist2(x, j, k, spec.dim, spec.delay_samples);
      if (d2 < best) {
        best = d2;
        arg = k;
      }
    }
    nn[j] = arg;
    nnd2[j] = best;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long j = 0; j < static_cast<long>(m); ++j)
      find_neighbor(static_cast<std::size_t>(j));
  } else {
    for (std::size_t j = 0; j < m; ++j) find_neighbor(j);
  }

  std::vector<std::size_t> valid;
  valid.reserve(m);
  for (std::size_t j = 0; j < m; ++j)
    if (std::isfinite(nnd2[j]) && nnd2[j] > 0.0) valid.push_back(j);
  if (valid.empty())
    throw std::runtime_error("max_lyapunov: no valid neighbor pairs");

  LyapunovEstimate est;
  est.dt = dt;
  est.mean_log_div.assign(imax + 1, std::numeric_limits<double>::quiet_NaN());
  auto curve_at = [&](std::size_t i) {
    double sum = 0.0;
    std::size_t cnt = 0;
    for (std::size_t j : valid) {
      const double d2 = dist2(x, j + i, nn[j] + i, spec.dim, spec.delay_samples);
      if (d2 > 0.0) {
        sum += 0.5 * std::log(d2);
        ++cnt;
      }
    }
    return cnt ? sum / static_cast<double>(cnt)
               : std::numeric_limits<double>::quiet_NaN();
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i <= static_cast<long>(imax); ++i)
      est.mean_log_div[static_cast<std::size_t>(i)] =
          curve_at(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i <= imax; ++i) est.mean_log_div[i] = curve_at(i);
  }
  // exact-periodicity corner: an all-zero separation column inherits its
  // left neighbor so the fit stays finite
  for (std::size_t i = 1; i <= imax; ++i)
    if (std::isnan(est.mean_log_div[i]))
      est.mean_log_div[i] = est.mean_log_div[i - 1];

  est.fit_i0 = static_cast<std::size_t>(std::llround(fit_t0 / dt));
  est.fit_i1 = imax;
  double tm = 0.0, ym = 0.0;
  const double cnt = static_cast<double>(est.fit_i1 - est.fit_i0 + 1);
  for (std::size_t i = est.fit_i0; i <= est.fit_i1; ++i) {
    tm += static_cast<double>(i) * dt;
    ym += est.mean_log_div[i];
  }
  tm /= cnt;
  ym /= cnt;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = est.fit_i0; i <= est.fit_i1; ++i) {
    const double dx = static_cast<double>(i) * dt - tm;
    sxy += dx * (est.mean_log_div[i] - ym);
    sxx += dx * dx;
  }
  est.exponent = sxy / sxx;
  return est;
}

std::vector<Vec2> poincare_section(const Trajectory& traj, double plane_value,
                                   int direction) {
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("poincare_section: direction must be +1 or -1");
  std::vector<Vec2> pts;
  for (std::size_t j = 0; j + 1 < traj.size(); ++j) {
    const double a = traj.state[j].theta[0] - plane_value;
    const double b = traj.state[j + 1].theta[0] - plane_value;
    const bool cross =
        direction > 0 ? (a < 0.0 && b >= 0.0) : (a > 0.0 && b <= 0.0);
    if (!cross) continue;
    const double f = a / (a - b);
    const double th2 = (1.0 - f) * traj.state[j].theta[1] + f * traj.state[j + 1].theta[1];
    const double om2 = (1.0 - f) * traj.state[j].omega[1] + f * traj.state[j + 1].omega[1];
    pts.push_back(Vec2{th2, om2});
  }
  return pts;
}

std::vector<double> local_maxima(const std::vector<double>& x) {
  std::vector<double> out;
  for (std::size_t j = 1; j + 1 < x.size(); ++j)
    if (x[j - 1] < x[j] && x[j] >= x[j + 1]) out.push_back(x[j]);
  return out;
}

namespace {

// memory-light single-robot PD run collecting theta2 maxima after discard
std::vector<double> pd_maxima(const ScenarioConfig& base, double L) {
  const RobotParams plant = inject_uncertainty(base);
  const double h = base.h;
  const std::size_t n =
      static_cast<std::size_t>(std::round(base.diag.bifurcation_t_end / h));
  TorqueRingBuffer buf(h, L);
  JointState st{base.theta0, base.omega0};
  const std::size_t j0 = static_cast<std::size_t>(
      std::ceil(base.diag.discard_time / h - 0.5));
  std::vector<double> maxima;
  double x0 = 0.0, x1 = 0.0, x2 = st.theta[1];
  for (std::size_t j = 0; j <= n; ++j) {
    const DesiredState ref = desired_trajectory(j * h);
    const Vec2 cmd = pd_torque(base.pd, ref.theta, ref.omega, st);
    buf.write(j, cmd);
    const Vec2 tau = base.delay_applies_to_control ? buf.delayed(j) : cmd;
    x0 = x1;
    x1 = x2;
    x2 = st.theta[1];
    // center sample j-1 must lie past the discard time
    if (j >= 2 && j - 1 >= j0 && x0 < x1 && x1 >= x2) maxima.push_back(x1);
    if (j == n) break;
    st = rk4_step(plant, st, tau, h);
    if (!(all_finite(st.theta) && all_finite(st.omega))) break;
  }
  return maxima;
}

}  // namespace

std::vector<double> bifurcation_grid(const DiagnosticsOptions& d) {
  std::vector<double> grid;
  if (!(d.bifurcation_l_step > 0.0)) return grid;
  const long n = std::lround(
      std::floor((d.bifurcation_l_max - d.bifurcation_l_min) /
                     d.bifurcation_l_step +
                 1e-9));
  for (long k = 0; k <= n; ++k)
    grid.push_back(d.bifurcation_l_min +
                   static_cast<double>(k) * d.bifurcation_l_step);
  return grid;
}

std::vector<std::vector<double>> bifurcation_sweep(
    const ScenarioConfig& base, const std::vector<double>& L_grid, Exec exec) {
  for (double L : L_grid) delay_to_steps(base.h, L, "bifurcation L");
  std::vector<std::vector<double>> out(L_grid.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(L_grid.size()); ++i)
      out[static_cast<std::size_t>(i)] =
          pd_maxima(base, L_grid[static_cast<std::size_t>(i)]);
  } else {
    for (std::size_t i = 0; i < L_grid.size(); ++i)
      out[i] = pd_maxima(base, L_grid[i]);
  }
  return out;
}

double rms(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s / static_cast<double>(x.size()));
}

double total_variation(const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < x.size(); ++j) s += std::abs(x[j + 1] - x[j]);
  return s;
}

std::vector<double> downsample(const std::vector<double>& x, int stride) {
  if (stride < 1) throw std::invalid_argument("downsample: stride must be >= 1");
  std::vector<double> out;
  out.reserve(x.size() / static_cast<std::size_t>(stride) + 1);
  for (std::size_t j = 0; j < x.size(); j += static_cast<std::size_t>(stride))
    out.push_back(x[j]);
  return out;
}

}  // namespace fdsmc
