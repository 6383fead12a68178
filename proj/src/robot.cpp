#include "fdsmc/robot.hpp"

#include <cmath>
#include <stdexcept>

namespace fdsmc {

RobotParams RobotParams::from_base(double l1, double l2, double m1, double m2,
                                   double D1, double D2) {
  if (!(l1 > 0.0) || !(l2 > 0.0) || !(m1 > 0.0) || !(m2 > 0.0))
    throw std::invalid_argument("robot params: lengths and masses must be positive");
  if (D1 < 0.0 || D2 < 0.0)
    throw std::invalid_argument("robot params: friction must be non-negative");
  RobotParams p{};
  p.l1 = l1;
  p.l2 = l2;
  p.m1 = m1;
  p.m2 = m2;
  p.D1 = D1;
  p.D2 = D2;
  p.I1 = m1 * l1 * l1 / 3.0;
  p.I2 = m2 * l2 * l2 / 3.0;
  p.J1 = p.I1 + (m1 + 4.0 * m2) * l1 * l1;
  p.J2 = p.I2 + m2 * l2 * l2;
  p.s = 2.0 * m2 * l1 * l2;
  return p;
}

RobotParams RobotParams::nominal() {
  return from_base(0.25, 0.25, 1.0, 1.0, 0.5, 0.5);
}

RobotParams RobotParams::uncertain() {
  return from_base(0.15, 0.15, 0.7, 0.4, 0.5, 0.5);
}

Mat2 inertia(const RobotParams& p, double theta2) {
  const double c2 = std::cos(theta2);
  const double m12 = p.J2 + p.s * c2;
  return Mat2{p.J1 + p.J2 + 2.0 * p.s * c2, m12, m12, p.J2};
}

Vec2 coriolis(const RobotParams& p, const JointState& st) {
  const double s2 = std::sin(st.theta[1]);
  const double w1 = st.omega[0];
  const double w2 = st.omega[1];
  return Vec2{-p.s * (2.0 * w1 * w2 + w2 * w2) * s2,
              p.s * w1 * w1 * s2};
}

Vec2 bias_torque(const RobotParams& p, const JointState& st) {
  Vec2 h = coriolis(p, st);
  h[0] += p.D1 * st.omega[0];
  h[1] += p.D2 * st.omega[1];
  return h;
}

Vec2 forward_dynamics(const RobotParams& p, const JointState& st, Vec2 torque) {
  const Mat2 Minv = inverse(inertia(p, st.theta[1]));
  return Minv * (torque - bias_torque(p, st));
}

Mat2 inertia_dot(const RobotParams& p, double theta2, double theta2_dot) {
  const double d = -p.s * std::sin(theta2) * theta2_dot;
  return Mat2{2.0 * d, d, d, 0.0};
}

Mat2 inertia_inv_dot(const RobotParams& p, double theta2, double theta2_dot) {
  const Mat2 Minv = inverse(inertia(p, theta2));
  const Mat2 Md = inertia_dot(p, theta2, theta2_dot);
  return -1.0 * (Minv * (Md * Minv));
}

Vec2 coriolis_dot(const RobotParams& p, const JointState& st, Vec2 theta_ddot) {
  const double s2 = std::sin(st.theta[1]);
  const double c2 = std::cos(st.theta[1]);
  const double w1 = st.omega[0], w2 = st.omega[1];
  const double a1 = theta_ddot[0], a2 = theta_ddot[1];
  // product rule on H(theta2, w1, w2); theta2 varies at rate w2
  const double h1 = -p.s * ((2.0 * a1 * w2 + 2.0 * w1 * a2 + 2.0 * w2 * a2) * s2 +
                            (2.0 * w1 * w2 + w2 * w2) * c2 * w2);
  const double h2 = p.s * (2.0 * w1 * a1 * s2 + w1 * w1 * c2 * w2);
  return Vec2{h1, h2};
}

Vec2 fk_endeffector(const RobotParams& p, Vec2 theta) {
  const double a = theta[0];
  const double b = theta[0] + theta[1];
  return Vec2{p.l1 * std::cos(a) + p.l2 * std::cos(b),
              p.l1 * std::sin(a) + p.l2 * std::sin(b)};
}

double mech_energy(const RobotParams& p, const JointState& st) {
  const Mat2 M = inertia(p, st.theta[1]);
  return 0.5 * dot(st.omega, M * st.omega);
}

}  // namespace fdsmc
