#pragma once

// Closed-form two-link manipulator terms: inertia, centripetal/Coriolis,
// viscous friction, their time derivatives, forward dynamics, forward
// kinematics and kinetic energy. The model is planar-horizontal (no gravity);
// all functions are stateless and safe for concurrent use.

#include "fdsmc/vec2.hpp"

namespace fdsmc {

/// Physical constants of the arm plus the derived inertia terms.
struct RobotParams {
  double l1, l2;  // link lengths [m]
  double m1, m2;  // link masses [kg]
  double D1, D2;  // viscous friction [N m s]

  // derived, recomputable from the base fields
  double I1, I2;  // link moments of inertia
  double J1, J2;  // lumped inertia terms
  double s;       // coupling coefficient 2*m2*l1*l2

  /// Build from base constants; validates positivity and fills the derived
  /// terms (I1 = m1 l1^2/3, I2 = m2 l2^2/3, J1 = I1 + (m1+4 m2) l1^2,
  /// J2 = I2 + m2 l2^2, s = 2 m2 l1 l2).
  static RobotParams from_base(double l1, double l2, double m1, double m2,
                               double D1, double D2);

  /// Reference arm: l = 0.25 m, m = 1 kg, D = 0.5 N m s per link.
  static RobotParams nominal();

  /// Perturbed plant used for robustness runs: l1 = l2 = 0.15 m,
  /// m1 = 0.7 kg, m2 = 0.4 kg (friction unchanged).
  static RobotParams uncertain();

  friend bool operator==(const RobotParams&, const RobotParams&) = default;
};

struct JointState {
  Vec2 theta;  // joint angles [rad], unwrapped
  Vec2 omega;  // joint rates [rad/s]

  friend bool operator==(const JointState&, const JointState&) = default;
};

/// Inertia matrix M(theta2); symmetric positive definite for valid params.
Mat2 inertia(const RobotParams& p, double theta2);

/// Centripetal/Coriolis torque vector.
Vec2 coriolis(const RobotParams& p, const JointState& st);

/// Friction plus Coriolis lumped together: H + D*omega.
Vec2 bias_torque(const RobotParams& p, const JointState& st);

/// Joint accelerations from M*thdd + H + D*omega = torque, via closed-form
/// 2x2 inversion (determinant guard 1e-9).
Vec2 forward_dynamics(const RobotParams& p, const JointState& st, Vec2 torque);

/// dM/dt given theta2 and its rate.
Mat2 inertia_dot(const RobotParams& p, double theta2, double theta2_dot);

/// d(M^-1)/dt = -M^-1 dM/dt M^-1.
Mat2 inertia_inv_dot(const RobotParams& p, double theta2, double theta2_dot);

/// Chain-rule time derivative of the Coriolis vector given accelerations.
Vec2 coriolis_dot(const RobotParams& p, const JointState& st, Vec2 theta_ddot);

/// End-effector position (x, y) in the workspace.
Vec2 fk_endeffector(const RobotParams& p, Vec2 theta);

/// Kinetic energy 0.5 * omega^T M omega (no potential term in this model).
double mech_energy(const RobotParams& p, const JointState& st);

}  // namespace fdsmc
