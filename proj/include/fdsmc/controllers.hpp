#pragma once

// Joint-space controllers: the PD loop that (with dead time) produces chaos,
// a fractional dynamic sliding mode controller (FDSMC) that synthesizes the
// torque *rate* and integrates it, and a classical first-order SMC used as
// the chattering comparator.

#include <cstddef>

#include "fdsmc/frac.hpp"
#include "fdsmc/robot.hpp"
#include "fdsmc/vec2.hpp"

namespace fdsmc {

/// Strict signum: +1 / 0 / -1.
double sgn(double x);

struct PdGains {
  double Kp = 4.0;
  double Kd = 4.0;

  friend bool operator==(const PdGains&, const PdGains&) = default;
};

/// tau = Kp*(theta_d - theta) + Kd*(omega_d - omega), per joint.
Vec2 pd_torque(const PdGains& g, Vec2 theta_d, Vec2 omega_d,
               const JointState& st);

struct FdsmcGains {
  double Ks = 1.0;
  double Kp = 2.0;
  double Kd = 10.0;
  double Kf = 0.1;     // divided by; must stay > 0
  double lambda = 0.7; // differintegration order, in (0,1)

  void validate() const;  // throws std::invalid_argument

  friend bool operator==(const FdsmcGains&, const FdsmcGains&) = default;
};

struct SmcGains {
  double c = 5.0;  // surface slope: sigma = edot + c*e
  double K = 1.0;  // switching gain

  friend bool operator==(const SmcGains&, const SmcGains&) = default;
};

/// Backward difference (acc - prev_acc)/h; caller passes prev=acc on the
/// first step to get the documented zero.
Vec2 third_derivative_estimate(Vec2 prev_acc, Vec2 acc, double h);

/// Computed-torque SMC with surface sigma = edot + c*e (e = master - slave):
/// tau = M(theta2)*(master_acc + c*edot + K*sgn(sigma)) + bias(state).
/// Discontinuous by construction; kept as the chattering baseline.
Vec2 smc_baseline_torque(const SmcGains& g, const RobotParams& model,
                         const JointState& slave, Vec2 e, Vec2 edot,
                         Vec2 master_acc, Vec2* sigma_out = nullptr);

/// Fractional dynamic sliding mode controller.
///
/// Surface per joint: S = Kp*e + Kd*D^l e + Kf*D^l(edot), with e = master -
/// slave and D^l the Caputo-mode streaming GL derivative. The error-signal
/// histories are fed from simulation start (t = 0, where e = edot = 0), so
/// the discrete composition identities behind the torque-rate law hold
/// exactly; the controller only *acts* once armed.
///
/// Torque rate (orders 1-l on the compensating operators):
///   Tdot = M * { (Kp/Kf) D^{1-l} edot + (Kd/Kf) edd + m3
///                - d(M^-1)/dt (T - bias) + M^-1 biasdot + (Ks/Kf) D^{1-l} sgn(S) }
/// where edd = master_acc - slave_acc uses the *measured* slave acceleration
/// (callers difference the measured joint rates). Closing edd on the nominal
/// model's predicted acceleration instead drags the command toward the
/// nominal-plant torque and loses synchronization under plant mismatch. m3
/// is the backward-difference estimate of the master jerk. T accumulates by
/// explicit Euler, which is what keeps the applied torque continuous.
class FdsmcController {
 public:
  FdsmcController(const FdsmcGains& g, const RobotParams& model, double h,
                  std::size_t memory_len);

  /// Per grid step, from t = 0 (pre-activation included): pushes e, edot and
  /// sgn(S) into the GL histories, retains the master acceleration for the
  /// jerk estimate, and returns the surface S.
  Vec2 observe(double t, Vec2 e, Vec2 edot, Vec2 master_acc);

  /// Engage at activation: seeds the integrated torque with the last PD
  /// command so the plant sees no input step.
  void arm(Vec2 last_command);
  bool armed() const { return armed_; }

  /// Torque rate from the current histories, slave state and measured slave
  /// acceleration; pure given the values stored by the latest observe().
  Vec2 torque_rate(const JointState& slave, Vec2 slave_acc) const;

  /// Euler-accumulate the rate and return the new command.
  Vec2 step_torque(const JointState& slave, Vec2 slave_acc);

  Vec2 surface() const { return S_; }
  Vec2 torque() const { return T_; }
  const FdsmcGains& gains() const { return gains_; }

 private:
  FdsmcGains gains_;
  RobotParams model_;
  double h_;
  bool armed_ = false;
  bool has_prev_acc_ = false;
  Vec2 T_{};        // integrated command
  Vec2 S_{};        // latest surface value
  Vec2 v1_{};       // D^{1-l} edot
  Vec2 v2_{};       // D^{1-l} sgn(S)
  Vec2 master_acc_{};
  Vec2 prev_master_acc_{};
  // per joint: D^l e, D^l edot (Caputo), D^{1-l} edot, D^{1-l} sgn(S) (plain GL)
  GlStream dl_e_[2];
  GlStream dl_edot_[2];
  GlStream dcomp_edot_[2];
  GlStream dcomp_sgn_[2];
};

}  // namespace fdsmc
