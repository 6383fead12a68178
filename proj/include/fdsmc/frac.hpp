#pragma once

// Discrete fractional differintegration on uniformly sampled signals.
//
// All operators use the Grunwald-Letnikov product formula: the order-q
// differintegral of f at grid index j is
//
//   h^{-q} * sum_{k=0..m} w_k(q) * f[j-k],      m = min(j, N-1)
//
// with binomial weights w_0 = 1, w_k = w_{k-1} * (1 - (q+1)/k) and memory
// truncation N. The Caputo path subtracts f[0] from every sample before the
// convolution, which makes the result agree with the Caputo derivative for
// orders in (0,1) and annihilate constants exactly.

#include <cstddef>
#include <vector>

#include "fdsmc/exec.hpp"

namespace fdsmc {

/// Differintegration order. Positive = derivative, negative = integral.
class FracOrder {
 public:
  explicit FracOrder(double q);
  double value() const { return q_; }

 private:
  double q_;
};

/// Binomial weights w_0..w_{n-1} of (1-z)^q.
std::vector<double> gl_weights(FracOrder q, std::size_t n);

/// Precomputed GL kernel: order, grid step and truncated weight table.
struct GlKernel {
  GlKernel(FracOrder order, double h, std::size_t memory_len);

  FracOrder order;
  double h;
  std::vector<double> weights;

  std::size_t memory_len() const { return weights.size(); }
};

/// Uniformly sampled scalar signal. Vector-valued series are handled as one
/// SampledSignal per channel.
struct SampledSignal {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

/// Sample f(t) on t0 + j*h for j = 0..n-1.
template <typename F>
SampledSignal sample_signal(F&& f, double t0, double h, std::size_t n) {
  SampledSignal s{t0, h, std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) s.values[j] = f(t0 + static_cast<double>(j) * h);
  return s;
}

/// Caputo derivative of order q in (0,1), realized as GL with initial-value
/// subtraction. Throws std::invalid_argument on empty input or q outside (0,1).
SampledSignal caputo_gl(const SampledSignal& f, FracOrder q, std::size_t memory_len,
                        Exec exec = Exec::parallel);

/// Fractional integral of order q > 0 (GL with order -q, no subtraction).
SampledSignal frac_integral(const SampledSignal& f, double q, std::size_t memory_len,
                            Exec exec = Exec::parallel);

/// Incremental GL evaluator. Feeding sample x_j returns exactly the value the
/// batch operator produces at index j for the same memory length (bit-identical:
/// the accumulation order is shared). Single-owner mutable state.
class GlStream {
 public:
  /// subtract_initial selects the Caputo path (first pushed sample is
  /// subtracted from all samples before convolution).
  GlStream(GlKernel kernel, bool subtract_initial);

  /// Push the sample at time t; t must advance by exactly one grid step.
  /// Returns the differintegral value at this index.
  double push(double t, double x);

  std::size_t count() const { return history_.size(); }
  const GlKernel& kernel() const { return kernel_; }

 private:
  GlKernel kernel_;
  bool subtract_initial_;
  bool started_ = false;
  double t0_ = 0.0;
  double f0_ = 0.0;
  double scale_;  // h^{-q}
  std::vector<double> history_;
};

}  // namespace fdsmc
