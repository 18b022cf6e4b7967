#pragma once

#include "calat/matrix.hpp"

namespace calat {

/// Moving frame of the lattice: the position vectors
/// [r(m,n), r(m+1,n), r(m,n+1)] as matrix columns, anchored at (m,n).
/// Transition matrices act by right multiplication.
template <class S>
struct Frame {
  Point3<S> c1, c2, c3;
  int m = 0, n = 0;

  /// Canonical initial frame: r(0,0)=e1, r(1,0)=e2, r(0,1)=e3.
  static Frame canonical() {
    using T = scalar_traits<S>;
    S one = T::from_int(1);
    S zero = T::from_int(0);
    return {{one, zero, zero}, {zero, one, zero}, {zero, zero, one}, 0, 0};
  }

  Matrix3<S> as_matrix() const {
    Matrix3<S> M;
    M.m = {{{c1.x, c2.x, c3.x}, {c1.y, c2.y, c3.y}, {c1.z, c2.z, c3.z}}};
    return M;
  }

  static Frame from_matrix(const Matrix3<S>& M, int m, int n) {
    return {M.column(0), M.column(1), M.column(2), m, n};
  }

  S det() const { return det3(c1, c2, c3); }

  /// Frame columns after right-multiplying by a transition matrix.
  Frame right_multiplied(const Matrix3<S>& M, int new_m, int new_n) const {
    auto combo = [&](int col) {
      return Point3<S>{S(c1.x * M.m[0][col] + c2.x * M.m[1][col] + c3.x * M.m[2][col]),
                       S(c1.y * M.m[0][col] + c2.y * M.m[1][col] + c3.y * M.m[2][col]),
                       S(c1.z * M.m[0][col] + c2.z * M.m[1][col] + c3.z * M.m[2][col])};
    };
    return {combo(0), combo(1), combo(2), new_m, new_n};
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.c1 == b.c1 && a.c2 == b.c2 && a.c3 == b.c3 && a.m == b.m && a.n == b.n;
  }
};

} // namespace calat
