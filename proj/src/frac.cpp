#include "fdsmc/frac.hpp"

#include <cmath>
#include <stdexcept>

namespace fdsmc {

FracOrder::FracOrder(double q) : q_(q) {
  if (!(std::abs(q) < 2.0))
    throw std::invalid_argument("FracOrder: |q| must be < 2");
}

std::vector<double> gl_weights(FracOrder q, std::size_t n) {
  if (n == 0) throw std::invalid_argument("gl_weights: n must be >= 1");
  std::vector<double> w(n);
  w[0] = 1.0;
  const double qv = q.value();
  for (std::size_t k = 1; k < n; ++k)
    w[k] = w[k - 1] * (1.0 - (qv + 1.0) / static_cast<double>(k));
  return w;
}

GlKernel::GlKernel(FracOrder order_, double h_, std::size_t memory_len)
    : order(order_), h(h_), weights(gl_weights(order_, memory_len)) {
  if (!(h > 0.0)) throw std::invalid_argument("GlKernel: h must be > 0");
}

namespace {

// Shared inner sum; the k-order is the contract that makes the serial,
// parallel and streaming paths bit-identical.
inline double convolve_at(const std::vector<double>& x, std::size_t j,
                          const std::vector<double>& w, double base) {
  const std::size_t m = std::min(j, w.size() - 1);
  double acc = 0.0;
  for (std::size_t k = 0; k <= m; ++k) acc += w[k] * (x[j - k] - base);
  return acc;
}

SampledSignal gl_apply_serial(const SampledSignal& f, const std::vector<double>& w,
                              double scale, double base) {
  SampledSignal g{f.t0, f.h, std::vector<double>(f.size())};
  for (std::size_t j = 0; j < f.size(); ++j)
    g.values[j] = scale * convolve_at(f.values, j, w, base);
  return g;
}

SampledSignal gl_apply_parallel(const SampledSignal& f, const std::vector<double>& w,
                                double scale, double base) {
  SampledSignal g{f.t0, f.h, std::vector<double>(f.size())};
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j)
    g.values[j] = scale * convolve_at(f.values, static_cast<std::size_t>(j), w, base);
  return g;
}

SampledSignal gl_apply(const SampledSignal& f, const std::vector<double>& w,
                       double scale, double base, Exec exec) {
  return exec == Exec::parallel ? gl_apply_parallel(f, w, scale, base)
                                : gl_apply_serial(f, w, scale, base);
}

void check_operand(const SampledSignal& f, std::size_t memory_len) {
  if (f.values.empty()) throw std::invalid_argument("fractional operator: empty signal");
  if (!(f.h > 0.0)) throw std::invalid_argument("fractional operator: h must be > 0");
  if (memory_len == 0) throw std::invalid_argument("fractional operator: memory_len must be >= 1");
}

}  // namespace

SampledSignal caputo_gl(const SampledSignal& f, FracOrder q, std::size_t memory_len, Exec exec) {
  check_operand(f, memory_len);
  const double qv = q.value();
  if (!(qv > 0.0 && qv < 1.0))
    throw std::invalid_argument("caputo_gl: order must lie in (0,1)");
  const auto w = gl_weights(q, memory_len);
  return gl_apply(f, w, std::pow(f.h, -qv), f.values.front(), exec);
}

SampledSignal frac_integral(const SampledSignal& f, double q, std::size_t memory_len, Exec exec) {
  check_operand(f, memory_len);
  if (!(q > 0.0)) throw std::invalid_argument("frac_integral: order must be > 0");
  const auto w = gl_weights(FracOrder(-q), memory_len);
  return gl_apply(f, w, std::pow(f.h, q), 0.0, exec);
}

GlStream::GlStream(GlKernel kernel, bool subtract_initial)
    : kernel_(std::move(kernel)),
      subtract_initial_(subtract_initial),
      scale_(std::pow(kernel_.h, -kernel_.order.value())) {}

double GlStream::push(double t, double x) {
  if (!started_) {
    t0_ = t;
    f0_ = x;
    started_ = true;
  } else {
    const double expected = t0_ + static_cast<double>(history_.size()) * kernel_.h;
    if (!(std::abs(t - expected) <= 0.25 * kernel_.h))
      throw std::invalid_argument("GlStream: samples must advance by one grid step");
  }
  history_.push_back(x);
  const std::size_t j = history_.size() - 1;
  const double base = subtract_initial_ ? f0_ : 0.0;
  const std::size_t m = std::min(j, kernel_.weights.size() - 1);
  double acc = 0.0;
  for (std::size_t k = 0; k <= m; ++k) acc += kernel_.weights[k] * (history_[j - k] - base);
  return scale_ * acc;
}

}  // namespace fdsmc
