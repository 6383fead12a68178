// Wall-clock comparison of the serial reference kernels against the
// OpenMP-parallel ones, plus an equality check: parallel output must be
// bit-identical to serial (per-slot writes, no order-dependent reductions).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#include "fdsmc/chaos.hpp"
#include "fdsmc/exec.hpp"
#include "fdsmc/frac.hpp"
#include "fdsmc/sim.hpp"

using namespace fdsmc;

namespace {

template <typename F>
double time_run(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-22s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n",
              name, serial, parallel, serial / parallel,
              identical ? "outputs identical" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
  // Fractional derivative of a long signal, full memory.
  {
    const std::size_t n = 120000;
    SampledSignal f = sample_signal(
        [](double t) { return std::sin(1.3 * t) + 0.2 * t; }, 0.0, 1e-3, n);
    SampledSignal a, b;
    const double ts =
        time_run([&] { a = caputo_gl(f, FracOrder(0.7), n, Exec::serial); });
    const double tp =
        time_run([&] { b = caputo_gl(f, FracOrder(0.7), n, Exec::parallel); });
    report("caputo_gl", ts, tp,
           std::memcmp(a.values.data(), b.values.data(),
                       n * sizeof(double)) == 0);
  }

  // Largest-Lyapunov neighbor search on a logistic-map series.
  {
    std::vector<double> x(6000);
    x[0] = 0.36;
    for (std::size_t j = 1; j < x.size(); ++j)
      x[j] = 4.0 * x[j - 1] * (1.0 - x[j - 1]);
    LyapunovEstimate a, b;
    const double ts = time_run(
        [&] { a = max_lyapunov(x, 1.0, {2, 1}, 10, 0.0, 4.0, Exec::serial); });
    const double tp = time_run(
        [&] { b = max_lyapunov(x, 1.0, {2, 1}, 10, 0.0, 4.0, Exec::parallel); });
    report("max_lyapunov", ts, tp,
           a.exponent == b.exponent && a.mean_log_div == b.mean_log_div);
  }

  // Dead-time bifurcation sweep (independent scenario per grid point).
  {
    ScenarioConfig cfg;
    cfg.mode = Mode::single_pd;
    cfg.diag.bifurcation = true;
    cfg.diag.bifurcation_t_end = 40.0;
    cfg.diag.discard_time = 20.0;
    std::vector<double> grid = {0.005, 0.010, 0.015, 0.020};
    std::vector<std::vector<double>> a, b;
    const double ts =
        time_run([&] { a = bifurcation_sweep(cfg, grid, Exec::serial); });
    const double tp =
        time_run([&] { b = bifurcation_sweep(cfg, grid, Exec::parallel); });
    report("bifurcation_sweep", ts, tp, a == b);
  }
  return 0;
}
