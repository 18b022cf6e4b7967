#pragma once

#include <string>
#include <vector>

#include "calat/scalar.hpp"

namespace calat {

/// The seven invariants of the discrete structure equations at one site.
/// d = a - b - c is derived, not stored.
template <class S>
struct CoefficientSet {
  S a{}, b{}, c{}, alpha{}, beta{}, gamma{}, delta{};

  S d() const { return S(a - b - c); }

  friend bool operator==(const CoefficientSet& p, const CoefficientSet& q) {
    return p.a == q.a && p.b == q.b && p.c == q.c && p.alpha == q.alpha &&
           p.beta == q.beta && p.gamma == q.gamma && p.delta == q.delta;
  }
};

/// Clauses of the standing assumptions violated by a set, empty when clean.
/// Reported as warnings, not hard errors: near-degenerate data stays inspectable.
template <class S>
std::vector<std::string> assumption_violations(const CoefficientSet<S>& s,
                                               const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  std::vector<std::string> out;
  S scale = T::abs(s.a);
  if (T::abs(s.b) > scale) scale = T::abs(s.b);
  if (T::abs(s.c) > scale) scale = T::abs(s.c);
  if (is_zero(s.d(), scale, tol)) out.push_back("d = a-b-c = 0");
  if (is_zero(s.b, scale, tol)) out.push_back("b = 0");
  if (is_zero(s.c, scale, tol)) out.push_back("c = 0");
  if (is_zero(S(s.a - T::from_int(1)), scale, tol)) out.push_back("a = 1");
  return out;
}

/// Coefficient sets over a dense index rectangle.
template <class S>
class CoefficientField {
public:
  CoefficientField(int imin, int imax, int jmin, int jmax)
      : imin_(imin), imax_(imax), jmin_(jmin), jmax_(jmax) {
    if (imax < imin || jmax < jmin)
      throw Error("empty coefficient field rectangle");
    sets_.resize(static_cast<size_t>(rows()) * cols());
  }

  int imin() const { return imin_; }
  int imax() const { return imax_; }
  int jmin() const { return jmin_; }
  int jmax() const { return jmax_; }
  int rows() const { return imax_ - imin_ + 1; }
  int cols() const { return jmax_ - jmin_ + 1; }

  bool contains(int i, int j) const {
    return i >= imin_ && i <= imax_ && j >= jmin_ && j <= jmax_;
  }

  const CoefficientSet<S>& at(int i, int j) const {
    if (!contains(i, j))
      throw MissingStencil("coefficient set (" + std::to_string(i) + "," +
                           std::to_string(j) + ") is outside the field");
    return sets_[index(i, j)];
  }

  CoefficientSet<S>& at(int i, int j) {
    if (!contains(i, j))
      throw MissingStencil("coefficient set (" + std::to_string(i) + "," +
                           std::to_string(j) + ") is outside the field");
    return sets_[index(i, j)];
  }

  /// Field constant over a rectangle.
  static CoefficientField constant(const CoefficientSet<S>& s, int imin, int imax,
                                   int jmin, int jmax) {
    CoefficientField f(imin, imax, jmin, jmax);
    for (auto& e : f.sets_) e = s;
    return f;
  }

  friend bool operator==(const CoefficientField& a, const CoefficientField& b) {
    return a.imin_ == b.imin_ && a.imax_ == b.imax_ && a.jmin_ == b.jmin_ &&
           a.jmax_ == b.jmax_ && a.sets_ == b.sets_;
  }

private:
  size_t index(int i, int j) const {
    return static_cast<size_t>(i - imin_) * cols() + static_cast<size_t>(j - jmin_);
  }

  int imin_, imax_, jmin_, jmax_;
  std::vector<CoefficientSet<S>> sets_;
};

struct FieldWarning {
  int i, j;
  std::string clause;
};

} // namespace calat
