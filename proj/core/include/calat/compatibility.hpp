#pragma once

#include "calat/transition.hpp"

namespace calat {

// Integrability of the coefficient field. The six scalar conditions couple a
// set with its shifts; each is evaluated as LHS - RHS without clearing
// denominators (clearing them would silently accept degenerate sites), so
// denominators are checked first. The matrix form is the commutator
// A(m,n)B(m+1,n) - B(m,n)A(m,n+1).

/// Signed residuals of the six scalar compatibility conditions at one site,
/// plus the intermediate K of the last pair.
template <class S>
struct CompatResiduals {
  S r_alpha{};  // alpha - (1-a_1) d / ((a-1) b_1)
  S r_gamma{};  // gamma - (1-a_2) d / ((a-1) c_2)
  S r_ratio{};  // c/b - c_12 d_2 / (b_12 d_1)
  S r_a12{};    // (1-a_12)/b_12 - (a_2-1)(a_1-1) c (1-K) / ((a-1) d_2)
  S r_beta{};   // (a_2-1) b beta_2 + (a-1)(a_1-c_1) - (a-1) b_1 beta - (a_1-1)(a-c)
  S r_delta{};  // (a_1-1) c delta_1 + (a-1)(a_2-b_2) - (a-1) c_2 delta - (a_2-1)(a-b)
  S k_value{};

  template <class F>
  void for_each(F&& f) const {
    f("r_alpha", r_alpha);
    f("r_gamma", r_gamma);
    f("r_ratio", r_ratio);
    f("r_a12", r_a12);
    f("r_beta", r_beta);
    f("r_delta", r_delta);
  }

  S max_abs() const {
    using T = scalar_traits<S>;
    S best = T::from_int(0);
    for_each([&](const char*, const S& v) {
      S a = T::abs(v);
      if (a > best) best = a;
    });
    return best;
  }
};

namespace detail {
template <class S>
void require_factor(const S& v, const Tolerance& tol, const char* what, int i, int j) {
  if (is_zero(v, v, tol))
    throw ZeroDenominator(std::string("factor ") + what + " vanishes at site (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
}
} // namespace detail

/// Residuals of the six compatibility conditions at (i,j). Requires the field
/// at (i,j), (i+1,j), (i,j+1) and (i+1,j+1).
template <class S>
CompatResiduals<S> scalar_residuals(const CoefficientField<S>& f, int i, int j,
                                    const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  const S one = T::from_int(1);
  const CoefficientSet<S>& s = f.at(i, j);
  const CoefficientSet<S>& s1 = f.at(i + 1, j);
  const CoefficientSet<S>& s2 = f.at(i, j + 1);
  const CoefficientSet<S>& s12 = f.at(i + 1, j + 1);

  S am1 = S(s.a - one);
  detail::require_factor(am1, tol, "(a-1)", i, j);
  detail::require_factor(s1.b, tol, "b_1", i, j);
  detail::require_factor(s2.c, tol, "c_2", i, j);
  detail::require_factor(s.b, tol, "b", i, j);
  detail::require_factor(s12.b, tol, "b_12", i, j);
  detail::require_factor(s1.d(), tol, "(a_1-b_1-c_1)", i, j);
  detail::require_factor(s2.d(), tol, "(a_2-b_2-c_2)", i, j);
  S a1m1 = S(s1.a - one);
  S a2m1 = S(s2.a - one);
  detail::require_factor(a1m1, tol, "(a_1-1)", i, j);
  detail::require_factor(a2m1, tol, "(a_2-1)", i, j);
  detail::require_factor(s.c, tol, "c", i, j);

  CompatResiduals<S> out;
  out.r_alpha = S(s.alpha - (one - s1.a) * s.d() / (am1 * s1.b));
  out.r_gamma = S(s.gamma - (one - s2.a) * s.d() / (am1 * s2.c));
  out.r_ratio = S(s.c / s.b - s12.c * s2.d() / (s12.b * s1.d()));

  // K kept as one big quotient; no algebraic simplification.
  S k_num = S((am1 * s1.b * s.beta + (s1.a - s1.c) * (one - s.a) -
               (one - s1.a) * (s.a - s.c)) *
              (s2.c * s.delta * am1 + a2m1 * (s.a - s.b) - am1 * (s2.a - s2.b)));
  out.k_value = S(k_num / (s.b * s.c * a2m1 * a1m1));
  out.r_a12 = S((one - s12.a) / s12.b -
                a2m1 * a1m1 * s.c * (one - out.k_value) / (am1 * s2.d()));

  out.r_beta = S(a2m1 * s.b * s2.beta + am1 * (s1.a - s1.c) - am1 * s1.b * s.beta -
                 a1m1 * (s.a - s.c));
  out.r_delta = S(a1m1 * s.c * s1.delta + am1 * (s2.a - s2.b) - am1 * s2.c * s.delta -
                  a2m1 * (s.a - s.b));
  return out;
}

/// Max-abs entry of A(m,n)B(m+1,n) - B(m,n)A(m,n+1); zero exactly when the
/// frame transport around the elementary square closes up.
template <class S>
S matrix_residual(const CoefficientField<S>& f, int i, int j) {
  TransitionPair<S> here = transition_matrices(f.at(i, j));
  Matrix3<S> B1 = transition_matrices(f.at(i + 1, j)).B;
  Matrix3<S> A2 = transition_matrices(f.at(i, j + 1)).A;
  return (here.A * B1 - here.B * A2).max_abs();
}

/// Reduced compatibility test for a constant coefficient set:
///   -alpha b = -gamma c = a-b-c = bc(beta delta - 1).
template <class S>
bool constant_compatible(const CoefficientSet<S>& s, const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  S d = s.d();
  S ab = S(-s.alpha * s.b);
  S gc = S(-s.gamma * s.c);
  S bc = S(s.b * s.c * (s.beta * s.delta - T::from_int(1)));
  S scale = T::abs(d);
  if (T::abs(ab) > scale) scale = T::abs(ab);
  if (T::abs(gc) > scale) scale = T::abs(gc);
  if (T::abs(bc) > scale) scale = T::abs(bc);
  return is_zero(S(ab - d), scale, tol) && is_zero(S(gc - d), scale, tol) &&
         is_zero(S(bc - d), scale, tol);
}

/// Constant-coefficient family satisfying the reduced compatibility
///   -alpha b = -gamma c = a-b-c = bc(beta delta - 1)
/// in closed form: a = b+c+bc(beta delta - 1), alpha = c(1-beta delta),
/// gamma = b(1-beta delta). Inputs violating the standing assumptions are
/// rejected.
template <class S>
CoefficientSet<S> constant_family(const S& b, const S& c, const S& beta,
                                  const S& delta, const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  const S one = T::from_int(1);
  if (is_zero(b, b, tol) || is_zero(c, c, tol))
    throw AssumptionViolated("constant_family: bc = 0");
  S bd1 = S(beta * delta - one);
  if (is_zero(bd1, S(beta * delta), tol))
    throw AssumptionViolated("constant_family: beta*delta = 1 makes d = a-b-c = 0");
  S a = S(b + c + b * c * bd1);
  if (is_zero(S(a - one), a, tol))
    throw AssumptionViolated("constant_family: resulting a = 1");
  return {a, b, c, S(-c * bd1), beta, S(-b * bd1), delta};
}

/// Discrete affine sphere test: b = c and d = a-b-c = -1.
template <class S>
bool is_affine_sphere(const CoefficientSet<S>& s, const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  S scale = T::abs(s.b);
  if (T::abs(s.c) > scale) scale = T::abs(s.c);
  if (T::abs(s.a) > scale) scale = T::abs(s.a);
  return is_zero(S(s.b - s.c), scale, tol) &&
         is_zero(S(s.d() + T::from_int(1)), scale, tol);
}

/// The discrete Tzitzeica system data H, A, B over a rectangle.
template <class S>
struct TzitzeicaSite {
  S H{}, A{}, B{};
};

template <class S>
class TzitzeicaData {
public:
  TzitzeicaData(int imin, int imax, int jmin, int jmax)
      : imin_(imin), imax_(imax), jmin_(jmin), jmax_(jmax) {
    if (imax < imin || jmax < jmin) throw Error("empty Tzitzeica rectangle");
    sites_.resize(static_cast<size_t>(rows()) * cols());
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

  const TzitzeicaSite<S>& at(int i, int j) const {
    if (!contains(i, j))
      throw MissingStencil("Tzitzeica site (" + std::to_string(i) + "," +
                           std::to_string(j) + ") is outside the rectangle");
    return sites_[index(i, j)];
  }
  TzitzeicaSite<S>& at(int i, int j) {
    if (!contains(i, j))
      throw MissingStencil("Tzitzeica site (" + std::to_string(i) + "," +
                           std::to_string(j) + ") is outside the rectangle");
    return sites_[index(i, j)];
  }

private:
  size_t index(int i, int j) const {
    return static_cast<size_t>(i - imin_) * cols() + static_cast<size_t>(j - jmin_);
  }
  int imin_, imax_, jmin_, jmax_;
  std::vector<TzitzeicaSite<S>> sites_;
};

namespace detail {
template <class S>
void require_h(const S& h, const Tolerance& tol, int i, int j) {
  using T = scalar_traits<S>;
  if (is_zero(h, h, tol))
    throw ZeroDenominator("H = 0 at site (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
  if (is_zero(S(h - T::from_int(1)), h, tol))
    throw ZeroDenominator("H = 1 at site (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
}
} // namespace detail

/// Coefficient set of the affine-sphere Gauss equations at (i,j):
/// b = c = H, a = 2H-1, alpha = (H_1-1)/(H_1(H-1)), beta = A/(H-1),
/// gamma = (H_2-1)/(H_2(H-1)), delta = B/(H-1). Always lands in the
/// b = c, d = -1 subfamily.
template <class S>
CoefficientSet<S> tzitzeica_to_centroaffine(const TzitzeicaData<S>& t, int i, int j,
                                            const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  const S one = T::from_int(1);
  const S h = t.at(i, j).H;
  const S h1 = t.at(i + 1, j).H;
  const S h2 = t.at(i, j + 1).H;
  detail::require_h(h, tol, i, j);
  detail::require_h(h1, tol, i + 1, j);
  detail::require_h(h2, tol, i, j + 1);
  S hm1 = S(h - one);
  return {S(T::from_int(2) * h - one),
          h,
          h,
          S((h1 - one) / (h1 * hm1)),
          S(t.at(i, j).A / hm1),
          S((h2 - one) / (h2 * hm1)),
          S(t.at(i, j).B / hm1)};
}

/// Residuals of the discrete Tzitzeica system at (i,j):
///   rA = A_2 - (H_1/H) A,  rB = B_1 - (H_2/H) B,
///   rH = H_12 - H(H-1) / (H^2(H_1+H_2-H_1 H_2) - H + A B H_1 H_2).
template <class S>
struct TzitzeicaResiduals {
  S rA, rB, rH;
};

template <class S>
TzitzeicaResiduals<S> tzitzeica_residuals(const TzitzeicaData<S>& t, int i, int j,
                                          const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  const S one = T::from_int(1);
  const TzitzeicaSite<S>& s = t.at(i, j);
  const TzitzeicaSite<S>& s1 = t.at(i + 1, j);
  const TzitzeicaSite<S>& s2 = t.at(i, j + 1);
  const TzitzeicaSite<S>& s12 = t.at(i + 1, j + 1);
  if (is_zero(s.H, s.H, tol))
    throw ZeroDenominator("H = 0 at site (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
  S den = S(s.H * s.H * (s1.H + s2.H - s1.H * s2.H) - s.H + s.A * s.B * s1.H * s2.H);
  if (is_zero(den, den, tol))
    throw ZeroDenominator("H_12 denominator vanishes at site (" + std::to_string(i) +
                          "," + std::to_string(j) + ")");
  return {S(s2.A - s1.H / s.H * s.A), S(s1.B - s2.H / s.H * s.B),
          S(s12.H - s.H * (s.H - one) / den)};
}

} // namespace calat
