#pragma once

#include "calat/coefficients.hpp"
#include "calat/lattice.hpp"

namespace calat {

// Invariant extraction via the determinant ratios of the structure equations:
//   r11 - r1 = alpha (r1 - r) + beta (r12 - r1)
//   r12      = a r + b (r1 - r) + c (r2 - r)
//   r22 - r2 = gamma (r2 - r) + delta (r12 - r2)
// Only determinant ratios are used, never linear solves, so exactness and
// centroaffine invariance are immediate.

namespace detail {
template <class S>
void require_nonzero(const S& den, const S& scale, const Tolerance& tol,
                     const char* what, int i, int j) {
  if (is_zero(den, scale, tol))
    throw ZeroDenominator(std::string(what) + " vanishes at site (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
}
} // namespace detail

template <class S>
struct ABC {
  S a, b, c;
};

template <class S>
struct AlphaBeta {
  S alpha, beta;
};

template <class S>
struct GammaDelta {
  S gamma, delta;
};

/// a, b, c at a site. The coefficient of r in the r12 expansion is a-b-c,
/// so a is recovered as (det[r12,r1,r2] + det[r,r12,r2] + det[r,r1,r12]) / D.
template <class S>
ABC<S> extract_abc(const LatticeWindow<S>& w, int i, int j,
                   const Tolerance& tol = {}) {
  const Point3<S>& r = w.at(i, j);
  const Point3<S>& r1 = w.at(i + 1, j);
  const Point3<S>& r2 = w.at(i, j + 1);
  const Point3<S>& r12 = w.at(i + 1, j + 1);
  S D = det3(r, r1, r2);
  detail::require_nonzero(D, det3_scale(r, r1, r2), tol, "det[r,r1,r2]", i, j);
  S d = S(det3(r12, r1, r2) / D);
  S b = S(det3(r, r12, r2) / D);
  S c = S(det3(r, r1, r12) / D);
  return {S(d + b + c), b, c};
}

template <class S>
AlphaBeta<S> extract_alpha_beta(const LatticeWindow<S>& w, int i, int j,
                                const Tolerance& tol = {}) {
  const Point3<S>& r = w.at(i, j);
  const Point3<S>& r1 = w.at(i + 1, j);
  const Point3<S>& r11 = w.at(i + 2, j);
  const Point3<S>& r12 = w.at(i + 1, j + 1);
  S D = det3(r, r1, r12);
  detail::require_nonzero(D, det3_scale(r, r1, r12), tol, "det[r,r1,r12]", i, j);
  return {S(det3(r1, r11, r12) / D), S(det3(r, r1, r11) / D)};
}

template <class S>
GammaDelta<S> extract_gamma_delta(const LatticeWindow<S>& w, int i, int j,
                                  const Tolerance& tol = {}) {
  const Point3<S>& r = w.at(i, j);
  const Point3<S>& r2 = w.at(i, j + 1);
  const Point3<S>& r22 = w.at(i, j + 2);
  const Point3<S>& r12 = w.at(i + 1, j + 1);
  S D = det3(r, r2, r12);
  detail::require_nonzero(D, det3_scale(r, r2, r12), tol, "det[r,r2,r12]", i, j);
  return {S(det3(r2, r22, r12) / D), S(det3(r, r2, r22) / D)};
}

/// Full coefficient set at one site; needs r, r1, r2, r11, r12, r22.
template <class S>
CoefficientSet<S> extract_set(const LatticeWindow<S>& w, int i, int j,
                              const Tolerance& tol = {}) {
  ABC<S> abc = extract_abc(w, i, j, tol);
  AlphaBeta<S> ab = extract_alpha_beta(w, i, j, tol);
  GammaDelta<S> gd = extract_gamma_delta(w, i, j, tol);
  return {abc.a, abc.b, abc.c, ab.alpha, ab.beta, gd.gamma, gd.delta};
}

/// Signed triangle volume V(i,j) = det[r, r1, r2] / 6.
template <class S>
S triangle_volume(const LatticeWindow<S>& w, int i, int j) {
  return S(det3(w.at(i, j), w.at(i + 1, j), w.at(i, j + 1)) /
           scalar_traits<S>::from_int(6));
}

/// Max-abs norms of the three structure-equation defects after substituting
/// the extracted coefficients back in. Identically zero on the exact backend.
template <class S>
struct ReconstructionResiduals {
  int i, j;
  S r11_defect, r12_defect, r22_defect;
};

template <class S>
struct ExtractionResult {
  CoefficientField<S> field;
  std::vector<ReconstructionResiduals<S>> residuals;
  std::vector<FieldWarning> warnings;
};

/// Extracts the field over every site with a full stencil, i.e. the window
/// rectangle shrunk by two in each increasing direction. Boundary sites are
/// omitted rather than extrapolated.
template <class S>
ExtractionResult<S> extract_field(const LatticeWindow<S>& w,
                                  const Tolerance& tol = {}) {
  if (w.imax() - 2 < w.imin() || w.jmax() - 2 < w.jmin())
    throw MissingStencil("window too small to extract any coefficient set (needs 3x3)");
  ExtractionResult<S> out{
      CoefficientField<S>(w.imin(), w.imax() - 2, w.jmin(), w.jmax() - 2), {}, {}};
  for (int i = w.imin(); i <= w.imax() - 2; ++i) {
    for (int j = w.jmin(); j <= w.jmax() - 2; ++j) {
      CoefficientSet<S> s = extract_set(w, i, j, tol);
      out.field.at(i, j) = s;
      for (const std::string& clause : assumption_violations(s, tol))
        out.warnings.push_back({i, j, clause});

      const Point3<S>& r = w.at(i, j);
      const Point3<S>& r1 = w.at(i + 1, j);
      const Point3<S>& r2 = w.at(i, j + 1);
      const Point3<S>& r11 = w.at(i + 2, j);
      const Point3<S>& r12 = w.at(i + 1, j + 1);
      const Point3<S>& r22 = w.at(i, j + 2);
      Point3<S> e11 = (r11 - r1) - (s.alpha * (r1 - r) + s.beta * (r12 - r1));
      Point3<S> e12 = r12 - (s.a * r + s.b * (r1 - r) + s.c * (r2 - r));
      Point3<S> e22 = (r22 - r2) - (s.gamma * (r2 - r) + s.delta * (r12 - r2));
      out.residuals.push_back({i, j, linf(e11), linf(e12), linf(e22)});
    }
  }
  return out;
}

} // namespace calat
