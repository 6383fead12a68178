#include "fdsmc/controllers.hpp"

#include <stdexcept>

namespace fdsmc {

double sgn(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return -1.0;
  return 0.0;
}

Vec2 pd_torque(const PdGains& g, Vec2 theta_d, Vec2 omega_d,
               const JointState& st) {
  return g.Kp * (theta_d - st.theta) + g.Kd * (omega_d - st.omega);
}

void FdsmcGains::validate() const {
  // Ks = 0 is legal: it removes the switching term and leaves smooth
  // feedback. The other gains shape the surface (Kf also divides).
  if (Ks < 0.0 || !(Kp > 0.0) || !(Kd > 0.0) || !(Kf > 0.0))
    throw std::invalid_argument(
        "fdsmc gains must be positive (Ks may be zero)");
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw std::invalid_argument("fdsmc lambda must lie in (0,1)");
}

Vec2 third_derivative_estimate(Vec2 prev_acc, Vec2 acc, double h) {
  return (1.0 / h) * (acc - prev_acc);
}

Vec2 smc_baseline_torque(const SmcGains& g, const RobotParams& model,
                         const JointState& slave, Vec2 e, Vec2 edot,
                         Vec2 master_acc, Vec2* sigma_out) {
  const Vec2 sigma = edot + g.c * e;
  if (sigma_out) *sigma_out = sigma;
  const Vec2 sw{g.K * sgn(sigma[0]), g.K * sgn(sigma[1])};
  const Mat2 M = inertia(model, slave.theta[1]);
  return M * (master_acc + g.c * edot + sw) + bias_torque(model, slave);
}

FdsmcController::FdsmcController(const FdsmcGains& g, const RobotParams& model,
                                 double h, std::size_t memory_len)
    : gains_(g),
      model_(model),
      h_(h),
      dl_e_{GlStream(GlKernel(FracOrder(g.lambda), h, memory_len), true),
            GlStream(GlKernel(FracOrder(g.lambda), h, memory_len), true)},
      dl_edot_{GlStream(GlKernel(FracOrder(g.lambda), h, memory_len), true),
               GlStream(GlKernel(FracOrder(g.lambda), h, memory_len), true)},
      dcomp_edot_{
          GlStream(GlKernel(FracOrder(1.0 - g.lambda), h, memory_len), false),
          GlStream(GlKernel(FracOrder(1.0 - g.lambda), h, memory_len), false)},
      dcomp_sgn_{
          GlStream(GlKernel(FracOrder(1.0 - g.lambda), h, memory_len), false),
          GlStream(GlKernel(FracOrder(1.0 - g.lambda), h, memory_len), false)} {
  g.validate();
  if (!(h > 0.0)) throw std::invalid_argument("fdsmc: step must be positive");
  if (memory_len == 0) throw std::invalid_argument("fdsmc: memory_len must be >= 1");
}

Vec2 FdsmcController::observe(double t, Vec2 e, Vec2 edot, Vec2 master_acc) {
  prev_master_acc_ = has_prev_acc_ ? master_acc_ : master_acc;
  master_acc_ = master_acc;
  has_prev_acc_ = true;
  for (int i = 0; i < 2; ++i) {
    const double de = dl_e_[i].push(t, e[i]);
    const double ded = dl_edot_[i].push(t, edot[i]);
    v1_[i] = dcomp_edot_[i].push(t, edot[i]);
    S_[i] = gains_.Kp * e[i] + gains_.Kd * de + gains_.Kf * ded;
  }
  for (int i = 0; i < 2; ++i) v2_[i] = dcomp_sgn_[i].push(t, sgn(S_[i]));
  return S_;
}

void FdsmcController::arm(Vec2 last_command) {
  T_ = last_command;
  armed_ = true;
}

Vec2 FdsmcController::torque_rate(const JointState& slave,
                                  Vec2 slave_acc) const {
  const Mat2 M = inertia(model_, slave.theta[1]);
  const Mat2 Minv = inverse(M);
  const Vec2 hs = bias_torque(model_, slave);
  const Vec2 edd = master_acc_ - slave_acc;
  const Vec2 m3 =
      third_derivative_estimate(prev_master_acc_, master_acc_, h_);
  const Mat2 Minv_dot =
      inertia_inv_dot(model_, slave.theta[1], slave.omega[1]);
  Vec2 hs_dot = coriolis_dot(model_, slave, slave_acc);
  hs_dot[0] += model_.D1 * slave_acc[0];
  hs_dot[1] += model_.D2 * slave_acc[1];
  const double kp_kf = gains_.Kp / gains_.Kf;
  const double kd_kf = gains_.Kd / gains_.Kf;
  const double ks_kf = gains_.Ks / gains_.Kf;
  const Vec2 inner = kp_kf * v1_ + kd_kf * edd + m3 - Minv_dot * (T_ - hs) +
                     Minv * hs_dot + ks_kf * v2_;
  return M * inner;
}

Vec2 FdsmcController::step_torque(const JointState& slave, Vec2 slave_acc) {
  if (!armed_) throw std::logic_error("fdsmc: step_torque before arm");
  T_ += h_ * torque_rate(slave, slave_acc);
  return T_;
}

}  // namespace fdsmc
