#pragma once

#include <cmath>
#include <string>

#include <gmpxx.h>

#include "calat/errors.hpp"

namespace calat {

/// Exact scalar backend: arbitrary-precision rational.
using Rational = mpq_class;

/// Relative tolerance used by the float backend. A residual rho counts as
/// zero when |rho| <= relative * (1 + scale), where scale is the largest
/// magnitude entering the expression. The exact backend ignores it.
struct Tolerance {
  double relative = 1e-9;
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static constexpr const char* backend_name = "float";

  static double from_int(long v) { return static_cast<double>(v); }
  static double from_fraction(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static bool finite(double v) { return std::isfinite(v); }
  static double abs(double v) { return std::fabs(v); }
  static int sign(double v) { return (v > 0.0) - (v < 0.0); }
  static double to_double(double v) { return v; }

  // Shortest decimal that round-trips to the same double.
  static std::string to_string(double v);
  // Fixed significant-digit rendering (mesh export).
  static std::string to_decimal(double v, int digits);
  // Accepts decimal text and "p/q".
  static double parse(const std::string& text);
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr const char* backend_name = "exact";

  static Rational from_int(long v) { return Rational(v); }
  static Rational from_fraction(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  static bool finite(const Rational&) { return true; }
  static Rational abs(const Rational& v) { return ::abs(v); }
  static int sign(const Rational& v) { return sgn(v); }
  static double to_double(const Rational& v) { return v.get_d(); }

  // Canonical "p" or "p/q".
  static std::string to_string(const Rational& v) { return v.get_str(); }
  static std::string to_decimal(const Rational& v, int digits);
  // Accepts "p/q", integer, and plain decimal text (converted exactly).
  static Rational parse(const std::string& text);
};

/// True if `residual` counts as zero: exact equality on the exact backend,
/// |residual| <= tol.relative * (1 + |scale|) on the float backend.
template <class S>
bool is_zero(const S& residual, const S& scale, const Tolerance& tol) {
  if constexpr (scalar_traits<S>::is_exact) {
    (void)scale;
    (void)tol;
    return residual == 0;
  } else {
    return std::fabs(residual) <= tol.relative * (1.0 + std::fabs(scale));
  }
}

template <class S>
bool is_zero(const S& residual, const Tolerance& tol) {
  return is_zero(residual, residual, tol);
}

namespace detail {
std::string double_shortest(double v);
std::string double_decimal(double v, int digits);
std::string rational_decimal(const Rational& v, int digits);
Rational rational_parse(const std::string& text);
double double_parse(const std::string& text);
} // namespace detail

inline std::string scalar_traits<double>::to_string(double v) {
  return detail::double_shortest(v);
}
inline std::string scalar_traits<double>::to_decimal(double v, int digits) {
  return detail::double_decimal(v, digits);
}
inline double scalar_traits<double>::parse(const std::string& text) {
  return detail::double_parse(text);
}
inline std::string scalar_traits<Rational>::to_decimal(const Rational& v, int digits) {
  return detail::rational_decimal(v, digits);
}
inline Rational scalar_traits<Rational>::parse(const std::string& text) {
  return detail::rational_parse(text);
}

} // namespace calat
