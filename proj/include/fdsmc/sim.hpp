#pragma once

// Fixed-step simulation of the torque-dead-time robot loop: a single robot
// under delayed PD (the chaos-producing configuration) or a master-slave
// pair where the slave hands over from PD to the synchronizing controller at
// activation_time.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fdsmc/controllers.hpp"
#include "fdsmc/robot.hpp"
#include "fdsmc/vec2.hpp"

namespace fdsmc {

/// Dead-time buffer for commanded torque. The delay must be an exact integer
/// multiple of the grid step; entries are zero before anything is written.
class TorqueRingBuffer {
 public:
  TorqueRingBuffer(double h, double delay);

  /// Store the command issued at grid step `step`. Steps must be written in
  /// order (the buffer only keeps the last delay_steps()+1 entries).
  void write(std::size_t step, Vec2 tau);

  /// Entry written delay_steps() steps before `step`; zero for early steps.
  Vec2 delayed(std::size_t step) const;

  std::size_t delay_steps() const { return delay_steps_; }

 private:
  std::size_t delay_steps_;
  std::vector<Vec2> ring_;
};

/// Number of grid steps spanned by `delay`, validated to be an exact
/// multiple of h (relative slack 1e-9).
std::size_t delay_to_steps(double h, double delay, const char* what);

struct Trajectory {
  double h = 0.0;
  double t0 = 0.0;
  std::vector<double> t;
  std::vector<JointState> state;
  std::vector<Vec2> tau_applied;
  std::vector<Vec2> tau_cmd;
  std::vector<Vec2> surface;        // meaningful only where surface_valid
  std::vector<char> surface_valid;  // nonzero once the sliding controller runs

  std::size_t size() const { return t.size(); }
};

enum class Mode { single_pd, master_slave_fdsmc, master_slave_smc_baseline };

struct DiagnosticsOptions {
  bool lyapunov = false;
  bool poincare = false;
  bool embedding = false;
  bool phase = false;        // (theta2, omega2) downsampled phase portrait
  bool bifurcation = false;
  double discard_time = 100.0;   // transient dropped before diagnostics
  double downsample_dt = 0.01;   // estimator grid
  int embed_dim = 4;
  double embed_delay = 0.0;      // seconds; 0 = first autocorrelation zero
  double embed_delay_cap = 5.0;  // cap for the autocorrelation search
  double theiler_time = 4.0;     // neighbor exclusion window
  double lyap_fit_t0 = 0.0;
  double lyap_fit_t1 = 10.0;
  double poincare_plane = 0.5;   // theta1 value defining the section
  int poincare_direction = 1;    // +1 = crossings with rising theta1
  double bifurcation_l_min = 0.001;
  double bifurcation_l_max = 0.020;
  double bifurcation_l_step = 0.001;
  double bifurcation_t_end = 300.0;

  friend bool operator==(const DiagnosticsOptions&,
                         const DiagnosticsOptions&) = default;
};

struct ScenarioConfig {
  Mode mode = Mode::single_pd;
  double h = 5e-4;
  double t_end = 100.0;
  double L_master = 0.005;
  double L_slave = 0.015;
  PdGains pd;
  FdsmcGains fdsmc;
  SmcGains smc;
  double activation_time = 0.1;
  bool uncertainty = false;
  // When true the slave's commanded torque passes through its dead time like
  // any physical input; when false the command acts at the current step.
  // The synchronizing law is derived without actuation delay, so the
  // synchronization presets switch this off; the chaos studies keep it on.
  bool delay_applies_to_control = true;
  std::size_t memory_len = 4000;
  Vec2 theta0{};
  Vec2 omega0{};
  DiagnosticsOptions diag;
  int csv_stride = 1;  // row subsampling for exported time-series CSVs
  bool write_plots = true;
  std::string out_dir;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Slave plant parameters: nominal unless the uncertainty flag is set.
/// Controllers always use the nominal model.
RobotParams inject_uncertainty(const ScenarioConfig& cfg);

struct DesiredState {
  Vec2 theta, omega, accel;
};

/// Reference signal (pi/4)*sin(0.5*pi*t) applied identically to both joints.
DesiredState desired_trajectory(double t);

/// One classical RK4 step of the rigid-body dynamics with the applied torque
/// held constant across the substages.
JointState rk4_step(const RobotParams& p, const JointState& st, Vec2 tau,
                    double h);

struct SimResult {
  Trajectory primary;                 // the single robot, or the slave
  std::optional<Trajectory> master;   // present in master-slave modes
  bool diverged = false;
  std::size_t diverged_step = 0;
  double diverged_time = 0.0;
};

/// Run the configured scenario. Commands are computed once per grid step and
/// written to the dead-time buffer; each plant consumes the entry from L
/// seconds earlier. A non-finite state stops the run at that step and the
/// result is flagged diverged (records up to the last finite step are kept).
SimResult simulate(const ScenarioConfig& cfg);

/// Records from `t >= t_from` (grid-aligned), e.g. for transient discard.
Trajectory tail_from(const Trajectory& traj, double t_from);

}  // namespace fdsmc
