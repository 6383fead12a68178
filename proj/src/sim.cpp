#include "fdsmc/sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdsmc {

std::size_t delay_to_steps(double h, double delay, const char* what) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  if (delay < 0.0)
    throw std::invalid_argument(std::string(what) + " must be >= 0");
  const double ratio = delay / h;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded))
    throw std::invalid_argument(std::string(what) +
                                " must be an integer multiple of h");
  return static_cast<std::size_t>(rounded);
}

TorqueRingBuffer::TorqueRingBuffer(double h, double delay)
    : delay_steps_(delay_to_steps(h, delay, "delay")),
      ring_(delay_steps_ + 1, Vec2{}) {}

void TorqueRingBuffer::write(std::size_t step, Vec2 tau) {
  ring_[step % ring_.size()] = tau;
}

Vec2 TorqueRingBuffer::delayed(std::size_t step) const {
  if (step < delay_steps_) return Vec2{};
  return ring_[(step - delay_steps_) % ring_.size()];
}

RobotParams inject_uncertainty(const ScenarioConfig& cfg) {
  return cfg.uncertainty ? RobotParams::uncertain() : RobotParams::nominal();
}

DesiredState desired_trajectory(double t) {
  const double a = std::numbers::pi / 4.0;
  const double w = 0.5 * std::numbers::pi;
  const double th = a * std::sin(w * t);
  const double om = a * w * std::cos(w * t);
  const double al = -a * w * w * std::sin(w * t);
  return DesiredState{Vec2{th, th}, Vec2{om, om}, Vec2{al, al}};
}

JointState rk4_step(const RobotParams& p, const JointState& st, Vec2 tau,
                    double h) {
  auto deriv = [&](const JointState& s) {
    return JointState{s.omega, forward_dynamics(p, s, tau)};
  };
  const JointState k1 = deriv(st);
  const JointState k2 = deriv(
      JointState{st.theta + 0.5 * h * k1.theta, st.omega + 0.5 * h * k1.omega});
  const JointState k3 = deriv(
      JointState{st.theta + 0.5 * h * k2.theta, st.omega + 0.5 * h * k2.omega});
  const JointState k4 =
      deriv(JointState{st.theta + h * k3.theta, st.omega + h * k3.omega});
  const double w = h / 6.0;
  return JointState{
      st.theta + w * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
      st.omega + w * (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega)};
}

namespace {

bool finite(const JointState& s) {
  return all_finite(s.theta) && all_finite(s.omega);
}

void reserve(Trajectory& tr, double h, std::size_t n) {
  tr.h = h;
  tr.t0 = 0.0;
  tr.t.reserve(n + 1);
  tr.state.reserve(n + 1);
  tr.tau_applied.reserve(n + 1);
  tr.tau_cmd.reserve(n + 1);
  tr.surface.reserve(n + 1);
  tr.surface_valid.reserve(n + 1);
}

void record(Trajectory& tr, double t, const JointState& st, Vec2 applied,
            Vec2 cmd, Vec2 surf, bool valid) {
  tr.t.push_back(t);
  tr.state.push_back(st);
  tr.tau_applied.push_back(applied);
  tr.tau_cmd.push_back(cmd);
  tr.surface.push_back(surf);
  tr.surface_valid.push_back(valid ? 1 : 0);
}

void validate_common(const ScenarioConfig& cfg) {
  if (!(cfg.h > 0.0)) throw std::invalid_argument("h must be positive");
  if (!(cfg.t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");
  if (cfg.activation_time < 0.0)
    throw std::invalid_argument("activation_time must be >= 0");
  if (cfg.memory_len == 0)
    throw std::invalid_argument("memory_len must be >= 1");
}

SimResult simulate_single(const ScenarioConfig& cfg) {
  const RobotParams plant = inject_uncertainty(cfg);
  const std::size_t n = static_cast<std::size_t>(std::round(cfg.t_end / cfg.h));
  TorqueRingBuffer buf(cfg.h, cfg.L_slave);

  SimResult res;
  reserve(res.primary, cfg.h, n);
  JointState st{cfg.theta0, cfg.omega0};

  for (std::size_t j = 0; j <= n; ++j) {
    const double t = j * cfg.h;
    const DesiredState ref = desired_trajectory(t);
    const Vec2 cmd = pd_torque(cfg.pd, ref.theta, ref.omega, st);
    buf.write(j, cmd);
    const Vec2 tau = cfg.delay_applies_to_control ? buf.delayed(j) : cmd;
    record(res.primary, t, st, tau, cmd, Vec2{}, false);
    if (j == n) break;
    st = rk4_step(plant, st, tau, cfg.h);
    if (!finite(st)) {
      res.diverged = true;
      res.diverged_step = j + 1;
      res.diverged_time = (j + 1) * cfg.h;
      break;
    }
  }
  return res;
}

SimResult simulate_pair(const ScenarioConfig& cfg) {
  const RobotParams nominal = RobotParams::nominal();
  const RobotParams slave_plant = inject_uncertainty(cfg);
  const std::size_t n = static_cast<std::size_t>(std::round(cfg.t_end / cfg.h));
  TorqueRingBuffer buf_m(cfg.h, cfg.L_master);
  TorqueRingBuffer buf_s(cfg.h, cfg.L_slave);
  const bool fdsmc_mode = cfg.mode == Mode::master_slave_fdsmc;
  std::optional<FdsmcController> ctrl;
  if (fdsmc_mode) ctrl.emplace(cfg.fdsmc, nominal, cfg.h, cfg.memory_len);

  SimResult res;
  reserve(res.primary, cfg.h, n);
  res.master.emplace();
  reserve(*res.master, cfg.h, n);

  JointState m{cfg.theta0, cfg.omega0};
  JointState s{cfg.theta0, cfg.omega0};
  Vec2 prev_cmd_s{};
  Vec2 prev_omega_s = cfg.omega0;

  for (std::size_t j = 0; j <= n; ++j) {
    const double t = j * cfg.h;
    const DesiredState ref = desired_trajectory(t);

    // master: plain PD through its physical dead time
    const Vec2 cmd_m = pd_torque(cfg.pd, ref.theta, ref.omega, m);
    buf_m.write(j, cmd_m);
    const Vec2 tau_m = buf_m.delayed(j);
    const Vec2 am = forward_dynamics(nominal, m, tau_m);

    const Vec2 e = m.theta - s.theta;
    const Vec2 edot = m.omega - s.omega;
    if (fdsmc_mode) ctrl->observe(t, e, edot, am);  // histories run from t=0

    Vec2 cmd_s;
    bool surf_valid = false;
    Vec2 surf{};
    if (t < cfg.activation_time) {
      cmd_s = pd_torque(cfg.pd, ref.theta, ref.omega, s);
    } else if (fdsmc_mode) {
      if (!ctrl->armed()) ctrl->arm(prev_cmd_s);
      // measured slave acceleration: backward difference of the joint rates
      const Vec2 acc_meas = (1.0 / cfg.h) * (s.omega - prev_omega_s);
      cmd_s = ctrl->step_torque(s, acc_meas);
      surf = ctrl->surface();
      surf_valid = true;
    } else {
      cmd_s = smc_baseline_torque(cfg.smc, nominal, s, e, edot, am);
    }
    buf_s.write(j, cmd_s);
    const Vec2 tau_s = cfg.delay_applies_to_control ? buf_s.delayed(j) : cmd_s;
    prev_cmd_s = cmd_s;

    record(*res.master, t, m, tau_m, cmd_m, Vec2{}, false);
    record(res.primary, t, s, tau_s, cmd_s, surf, surf_valid);
    if (j == n) break;

    m = rk4_step(nominal, m, tau_m, cfg.h);
    prev_omega_s = s.omega;
    s = rk4_step(slave_plant, s, tau_s, cfg.h);
    if (!finite(m) || !finite(s)) {
      res.diverged = true;
      res.diverged_step = j + 1;
      res.diverged_time = (j + 1) * cfg.h;
      break;
    }
  }
  return res;
}

}  // namespace

SimResult simulate(const ScenarioConfig& cfg) {
  validate_common(cfg);
  if (cfg.mode == Mode::single_pd) return simulate_single(cfg);
  if (cfg.mode == Mode::master_slave_fdsmc) cfg.fdsmc.validate();
  return simulate_pair(cfg);
}

Trajectory tail_from(const Trajectory& traj, double t_from) {
  Trajectory out;
  out.h = traj.h;
  std::size_t j0 = 0;
  while (j0 < traj.size() && traj.t[j0] < t_from - 0.5 * traj.h) ++j0;
  out.t0 = j0 < traj.size() ? traj.t[j0] : 0.0;
  auto copy_tail = [j0](const auto& src, auto& dst) {
    dst.assign(src.begin() + static_cast<std::ptrdiff_t>(j0), src.end());
  };
  copy_tail(traj.t, out.t);
  copy_tail(traj.state, out.state);
  copy_tail(traj.tau_applied, out.tau_applied);
  copy_tail(traj.tau_cmd, out.tau_cmd);
  copy_tail(traj.surface, out.surface);
  copy_tail(traj.surface_valid, out.surface_valid);
  return out;
}

}  // namespace fdsmc
