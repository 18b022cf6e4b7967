#pragma once

#include <array>

#include "calat/point.hpp"

namespace calat {

/// Dense 3x3 matrix over the scalar backend. Entries are row-major:
/// m[r][c] is row r, column c.
template <class S>
struct Matrix3 {
  std::array<std::array<S, 3>, 3> m{};

  static Matrix3 identity() {
    Matrix3 id;
    for (int i = 0; i < 3; ++i) id.m[i][i] = scalar_traits<S>::from_int(1);
    return id;
  }

  S& operator()(int r, int c) { return m[r][c]; }
  const S& operator()(int r, int c) const { return m[r][c]; }

  Point3<S> column(int c) const { return {m[0][c], m[1][c], m[2][c]}; }

  friend bool operator==(const Matrix3& a, const Matrix3& b) {
    return a.m == b.m;
  }

  friend Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
    Matrix3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r.m[i][j] =
            S(a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j]);
    return r;
  }

  friend Matrix3 operator-(const Matrix3& a, const Matrix3& b) {
    Matrix3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = S(a.m[i][j] - b.m[i][j]);
    return r;
  }

  S det() const {
    return S(m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]));
  }

  S max_abs() const {
    using T = scalar_traits<S>;
    S best = T::abs(m[0][0]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        S a = T::abs(m[i][j]);
        if (a > best) best = a;
      }
    return best;
  }

  /// Adjugate-over-determinant inverse; exact on the rational backend.
  /// Throws SingularTransition when the determinant vanishes.
  Matrix3 inverse() const {
    S d = det();
    if (d == 0) throw SingularTransition("matrix is singular, cannot invert");
    Matrix3 inv;
    inv.m[0][0] = S((m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d);
    inv.m[0][1] = S((m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d);
    inv.m[0][2] = S((m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d);
    inv.m[1][0] = S((m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d);
    inv.m[1][1] = S((m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d);
    inv.m[1][2] = S((m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d);
    inv.m[2][0] = S((m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d);
    inv.m[2][1] = S((m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d);
    inv.m[2][2] = S((m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d);
    return inv;
  }
};

/// Apply a linear map to a position vector: M * p.
template <class S>
Point3<S> apply(const Matrix3<S>& M, const Point3<S>& p) {
  return {S(M.m[0][0] * p.x + M.m[0][1] * p.y + M.m[0][2] * p.z),
          S(M.m[1][0] * p.x + M.m[1][1] * p.y + M.m[1][2] * p.z),
          S(M.m[2][0] * p.x + M.m[2][1] * p.y + M.m[2][2] * p.z)};
}

} // namespace calat
