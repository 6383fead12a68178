#pragma once

#include <cmath>
#include <stdexcept>

namespace fdsmc {

/// Fixed-size 2-vector for joint-space quantities (angles, rates, torques).
struct Vec2 {
  double v[2] = {0.0, 0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double a, double b) : v{a, b} {}

  constexpr double& operator[](int i) { return v[i]; }
  constexpr double operator[](int i) const { return v[i]; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.v[0] + b.v[0], a.v[1] + b.v[1]}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.v[0] - b.v[0], a.v[1] - b.v[1]}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.v[0], -a.v[1]}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.v[0], s * a.v[1]}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return s * a; }
  Vec2& operator+=(Vec2 b) { v[0] += b.v[0]; v[1] += b.v[1]; return *this; }
  Vec2& operator-=(Vec2 b) { v[0] -= b.v[0]; v[1] -= b.v[1]; return *this; }

  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double max_abs(Vec2 a) { return std::max(std::abs(a[0]), std::abs(a[1])); }
inline bool all_finite(Vec2 a) { return std::isfinite(a[0]) && std::isfinite(a[1]); }

/// 2x2 matrix, row-major.
struct Mat2 {
  double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

  constexpr Mat2() = default;
  constexpr Mat2(double a11, double a12, double a21, double a22)
      : m{{a11, a12}, {a21, a22}} {}

  constexpr double operator()(int r, int c) const { return m[r][c]; }
  constexpr double& operator()(int r, int c) { return m[r][c]; }

  constexpr double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  constexpr double trace() const { return m[0][0] + m[1][1]; }

  friend constexpr Vec2 operator*(const Mat2& a, Vec2 x) {
    return {a.m[0][0] * x[0] + a.m[0][1] * x[1],
            a.m[1][0] * x[0] + a.m[1][1] * x[1]};
  }
  friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m[0][0] * b.m[0][0] + a.m[0][1] * b.m[1][0],
            a.m[0][0] * b.m[0][1] + a.m[0][1] * b.m[1][1],
            a.m[1][0] * b.m[0][0] + a.m[1][1] * b.m[1][0],
            a.m[1][0] * b.m[0][1] + a.m[1][1] * b.m[1][1]};
  }
  friend constexpr Mat2 operator*(double s, const Mat2& a) {
    return {s * a.m[0][0], s * a.m[0][1], s * a.m[1][0], s * a.m[1][1]};
  }
  friend constexpr Mat2 operator-(const Mat2& a) { return -1.0 * a; }

  friend constexpr bool operator==(const Mat2& a, const Mat2& b) {
    return a.m[0][0] == b.m[0][0] && a.m[0][1] == b.m[0][1] &&
           a.m[1][0] == b.m[1][0] && a.m[1][1] == b.m[1][1];
  }
};

/// Closed-form inverse. Throws if |det| <= guard (near-singular).
inline Mat2 inverse(const Mat2& a, double guard = 1e-9) {
  const double d = a.det();
  if (std::abs(d) <= guard)
    throw std::domain_error("Mat2: matrix is singular to the determinant guard");
  const double inv = 1.0 / d;
  return {a(1, 1) * inv, -a(0, 1) * inv, -a(1, 0) * inv, a(0, 0) * inv};
}

}  // namespace fdsmc
