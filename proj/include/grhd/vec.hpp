#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace grhd {

using Vec3 = std::array<double, 3>;
using Vec5 = std::array<double, 5>;
using Mat3 = std::array<Vec3, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

/// a_i M^{ij} b_j
inline double quad_form(const Vec3& a, const Mat3& m, const Vec3& b) {
  return dot(a, mat_vec(m, b));
}

inline double det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Inverse via cofactors; caller checks det != 0.
inline Mat3 inverse(const Mat3& m, double d) {
  const double id = 1.0 / d;
  Mat3 r;
  r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * id;
  r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * id;
  r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * id;
  r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * id;
  r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * id;
  r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * id;
  r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * id;
  r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * id;
  r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * id;
  return r;
}

inline Mat3 identity3() {
  return Mat3{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
}

inline Vec5 operator+(const Vec5& a, const Vec5& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4]};
}

inline Vec5 operator-(const Vec5& a, const Vec5& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], a[4] - b[4]};
}

inline Vec5 operator*(double s, const Vec5& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3], s * a[4]};
}

inline Vec5& operator+=(Vec5& a, const Vec5& b) {
  for (std::size_t i = 0; i < 5; ++i) a[i] += b[i];
  return a;
}

inline Vec5& operator-=(Vec5& a, const Vec5& b) {
  for (std::size_t i = 0; i < 5; ++i) a[i] -= b[i];
  return a;
}

inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline constexpr Vec5 zero5() { return {0, 0, 0, 0, 0}; }

}  // namespace grhd
