#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "fdsmc/sim.hpp"

using namespace fdsmc;

TEST_CASE("ring buffer shifts commands by the dead time exactly") {
  const double h = 5e-4;
  TorqueRingBuffer buf(h, 0.015);
  CHECK(buf.delay_steps() == 30);
  for (std::size_t j = 0; j < 100; ++j) {
    CHECK(buf.delayed(j)[0] == (j >= 30 ? static_cast<double>(j - 30) : 0.0));
    buf.write(j, {static_cast<double>(j), -static_cast<double>(j)});
  }
}

TEST_CASE("zero dead time passes commands through") {
  TorqueRingBuffer buf(5e-4, 0.0);
  CHECK(buf.delay_steps() == 0);
  buf.write(0, {3.5, -1.0});
  CHECK(buf.delayed(0)[0] == 3.5);
}

TEST_CASE("dead time must sit on the grid") {
  CHECK(delay_to_steps(5e-4, 0.005, "L") == 10);
  CHECK_THROWS_AS(delay_to_steps(5e-4, 0.00525, "L"), std::invalid_argument);
  CHECK_THROWS_AS(delay_to_steps(5e-4, -0.001, "L"), std::invalid_argument);
}

TEST_CASE("reference trajectory is the quarter-pi sine on both joints") {
  DesiredState d0 = desired_trajectory(0.0);
  CHECK(d0.theta[0] == 0.0);
  CHECK(d0.theta[1] == 0.0);
  CHECK(d0.omega[0] ==
        doctest::Approx(std::numbers::pi * std::numbers::pi / 8.0)
            .epsilon(1e-15));
  DesiredState d1 = desired_trajectory(1.0);  // quarter period
  CHECK(d1.theta[0] == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-15));
  CHECK(d1.theta[1] == d1.theta[0]);
  CHECK(d1.omega[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(d1.accel[0] ==
        doctest::Approx(-std::pow(0.5 * std::numbers::pi, 2) *
                        std::numbers::pi / 4.0)
            .epsilon(1e-12));
}

namespace {

ScenarioConfig small_single(double t_end, double L, bool delayed = true) {
  ScenarioConfig cfg;
  cfg.mode = Mode::single_pd;
  cfg.t_end = t_end;
  cfg.L_slave = L;
  cfg.delay_applies_to_control = delayed;
  return cfg;
}

}  // namespace

TEST_CASE("single run grid and delayed-torque bookkeeping") {
  ScenarioConfig cfg = small_single(1.0, 0.015);
  SimResult res = simulate(cfg);
  const Trajectory& tr = res.primary;
  CHECK_FALSE(res.diverged);
  CHECK(tr.size() == 2001);
  CHECK(tr.t[0] == 0.0);
  CHECK(tr.t[2000] == doctest::Approx(1.0).epsilon(1e-12));
  const std::size_t d = 30;
  for (std::size_t j = 0; j < tr.size(); ++j) {
    if (j >= d) {
      CHECK(tr.tau_applied[j] == tr.tau_cmd[j - d]);  // exact shift
    } else {
      CHECK(tr.tau_applied[j] == Vec2{});  // zero history
    }
    CHECK_FALSE(tr.surface_valid[j]);
  }
}

TEST_CASE("disabling the control-path delay applies commands immediately") {
  ScenarioConfig cfg = small_single(0.5, 0.015, false);
  SimResult res = simulate(cfg);
  for (std::size_t j = 0; j < res.primary.size(); ++j)
    CHECK(res.primary.tau_applied[j] == res.primary.tau_cmd[j]);
}

TEST_CASE("simulation is deterministic across calls") {
  ScenarioConfig cfg = small_single(2.0, 0.015);
  SimResult a = simulate(cfg);
  SimResult b = simulate(cfg);
  CHECK(a.primary.state == b.primary.state);
  CHECK(a.primary.tau_applied == b.primary.tau_applied);
}

TEST_CASE("halving the step barely moves the short-horizon solution") {
  // At a tame dead time the discretization is converged at h = 5e-4.
  ScenarioConfig coarse = small_single(2.0, 0.001);
  ScenarioConfig fine = coarse;
  fine.h = 2.5e-4;
  JointState a = simulate(coarse).primary.state.back();
  JointState b = simulate(fine).primary.state.back();
  CHECK(std::abs(a.theta[0] - b.theta[0]) < 1e-4);
  CHECK(std::abs(a.theta[1] - b.theta[1]) < 1e-4);
}

TEST_CASE("divergence is detected and truncates the record") {
  // Delayed PD on the light perturbed plant blows up within a second.
  ScenarioConfig cfg = small_single(5.0, 0.015);
  cfg.uncertainty = true;
  SimResult res = simulate(cfg);
  CHECK(res.diverged);
  CHECK(res.diverged_time < 1.0);
  CHECK(res.primary.size() == res.diverged_step);  // divergent state not kept
  for (const JointState& st : res.primary.state) {
    CHECK(all_finite(st.theta));
    CHECK(all_finite(st.omega));
  }
}

TEST_CASE("master-slave handover arms the sliding controller") {
  ScenarioConfig cfg;
  cfg.mode = Mode::master_slave_fdsmc;
  cfg.t_end = 3.0;
  cfg.delay_applies_to_control = false;
  SimResult res = simulate(cfg);
  CHECK_FALSE(res.diverged);
  REQUIRE(res.master.has_value());
  CHECK(res.master->size() == res.primary.size());

  const Trajectory& sl = res.primary;
  const auto j_act =
      static_cast<std::size_t>(std::llround(cfg.activation_time / cfg.h));
  for (std::size_t j = 0; j < sl.size(); ++j)
    CHECK(static_cast<bool>(sl.surface_valid[j]) == (j >= j_act));

  // seeded with the last PD command: no input step at the handover beyond
  // one Euler increment of the rate
  const double jump0 = std::abs(sl.tau_cmd[j_act][0] - sl.tau_cmd[j_act - 1][0]);
  const double jump1 = std::abs(sl.tau_cmd[j_act][1] - sl.tau_cmd[j_act - 1][1]);
  CHECK(jump0 < 0.1);
  CHECK(jump1 < 0.1);

  // master is an ordinary delayed-PD robot: no surface, physical dead time
  for (std::size_t j = 0; j < res.master->size(); ++j)
    CHECK_FALSE(res.master->surface_valid[j]);
}

TEST_CASE("smc baseline mode records no surfaces") {
  ScenarioConfig cfg;
  cfg.mode = Mode::master_slave_smc_baseline;
  cfg.t_end = 1.0;
  cfg.delay_applies_to_control = false;
  SimResult res = simulate(cfg);
  CHECK_FALSE(res.diverged);
  for (std::size_t j = 0; j < res.primary.size(); ++j)
    CHECK_FALSE(res.primary.surface_valid[j]);
}

TEST_CASE("uncertainty flag switches the slave plant only") {
  ScenarioConfig cfg;
  CHECK(inject_uncertainty(cfg) == RobotParams::nominal());
  cfg.uncertainty = true;
  CHECK(inject_uncertainty(cfg) == RobotParams::uncertain());
}

TEST_CASE("tail_from keeps the suffix on the same grid") {
  ScenarioConfig cfg = small_single(1.0, 0.001);
  Trajectory tr = simulate(cfg).primary;
  Trajectory tail = tail_from(tr, 0.4);
  CHECK(tail.t.front() == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(tail.t0 == tail.t.front());
  CHECK(tail.size() == tr.size() - 800);
  CHECK(tail.state.front() == tr.state[800]);
  CHECK(tail.state.back() == tr.state.back());
}

TEST_CASE("scenario validation rejects off-grid dead time") {
  ScenarioConfig cfg = small_single(1.0, 0.0103);
  CHECK_THROWS(simulate(cfg));
}
