#pragma once

#include "calat/scalar.hpp"

namespace calat {

/// Position vector of a lattice site; coordinates are dimensionless.
template <class S>
struct Point3 {
  S x{}, y{}, z{};

  friend bool operator==(const Point3& p, const Point3& q) {
    return p.x == q.x && p.y == q.y && p.z == q.z;
  }
  friend bool operator!=(const Point3& p, const Point3& q) { return !(p == q); }

  friend Point3 operator+(const Point3& p, const Point3& q) {
    return {S(p.x + q.x), S(p.y + q.y), S(p.z + q.z)};
  }
  friend Point3 operator-(const Point3& p, const Point3& q) {
    return {S(p.x - q.x), S(p.y - q.y), S(p.z - q.z)};
  }
  friend Point3 operator*(const S& t, const Point3& p) {
    return {S(t * p.x), S(t * p.y), S(t * p.z)};
  }
  friend Point3 operator-(const Point3& p) {
    return {S(-p.x), S(-p.y), S(-p.z)};
  }
};

template <class S>
bool finite(const Point3<S>& p) {
  using T = scalar_traits<S>;
  return T::finite(p.x) && T::finite(p.y) && T::finite(p.z);
}

/// Max-abs norm. Exact-friendly (no square roots).
template <class S>
S linf(const Point3<S>& p) {
  using T = scalar_traits<S>;
  S m = T::abs(p.x);
  S ay = T::abs(p.y);
  S az = T::abs(p.z);
  if (ay > m) m = ay;
  if (az > m) m = az;
  return m;
}

/// Determinant of the column arrangement [c1 c2 c3].
template <class S>
S det3(const Point3<S>& c1, const Point3<S>& c2, const Point3<S>& c3) {
  if constexpr (!scalar_traits<S>::is_exact) {
    if (!finite(c1) || !finite(c2) || !finite(c3))
      throw InvalidInput("det3: non-finite input");
  }
  return S(c1.x * (c2.y * c3.z - c2.z * c3.y) -
           c2.x * (c1.y * c3.z - c1.z * c3.y) +
           c3.x * (c1.y * c2.z - c1.z * c2.y));
}

/// Hadamard-style magnitude bound for a determinant; used as the tolerance
/// scale on the float backend.
template <class S>
S det3_scale(const Point3<S>& c1, const Point3<S>& c2, const Point3<S>& c3) {
  return S(linf(c1) * linf(c2) * linf(c3));
}

template <class S>
Point3<S> cross(const Point3<S>& p, const Point3<S>& q) {
  return {S(p.y * q.z - p.z * q.y), S(p.z * q.x - p.x * q.z),
          S(p.x * q.y - p.y * q.x)};
}

} // namespace calat
