#pragma once

#include <optional>

#include "calat/extraction.hpp"
#include "calat/synthesis.hpp"

namespace calat {

/// Combinatorial Laplacian on the fixed lattice triangulation:
/// Delta r = 6 r - sum of the six hexagonal neighbors
/// (i-1,j), (i-1,j+1), (i,j-1), (i,j+1), (i+1,j-1), (i+1,j).
template <class S>
Point3<S> laplacian(const LatticeWindow<S>& w, int i, int j) {
  Point3<S> sum = w.at(i - 1, j) + w.at(i - 1, j + 1) + w.at(i, j - 1) +
                  w.at(i, j + 1) + w.at(i + 1, j - 1) + w.at(i + 1, j);
  return scalar_traits<S>::from_int(6) * w.at(i, j) - sum;
}

template <class S>
struct HarmonicCheck {
  bool harmonic;
  S max_residual; // max over interior sites of the max-abs norm of Delta r
};

template <class S>
HarmonicCheck<S> harmonic_check(const LatticeWindow<S>& w, const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  if (w.imax() - w.imin() < 2 || w.jmax() - w.jmin() < 2)
    throw MissingStencil("harmonic_check needs at least one interior site (3x3 window)");
  bool harmonic = true;
  S worst = T::from_int(0);
  for (int i = w.imin() + 1; i <= w.imax() - 1; ++i) {
    for (int j = w.jmin() + 1; j <= w.jmax() - 1; ++j) {
      Point3<S> lap = laplacian(w, i, j);
      S res = linf(lap);
      if (res > worst) worst = res;
      if (!is_zero(res, linf(w.at(i, j)), tol)) harmonic = false;
    }
  }
  return {harmonic, worst};
}

namespace detail {

/// Proportionality factor s with v = s * p, if one exists.
template <class S>
std::optional<S> proportionality(const Point3<S>& v, const Point3<S>& p,
                                 const Tolerance& tol) {
  const S* num[3] = {&v.x, &v.y, &v.z};
  const S* den[3] = {&p.x, &p.y, &p.z};
  std::optional<S> s;
  for (int k = 0; k < 3; ++k) {
    if (is_zero(*den[k], linf(p), tol)) {
      if (!is_zero(*num[k], linf(v), tol)) return std::nullopt;
      continue;
    }
    S ratio = S(*num[k] / *den[k]);
    if (!s) {
      s = ratio;
    } else if (!is_zero(S(ratio - *s), *s, tol)) {
      return std::nullopt;
    }
  }
  return s; // nullopt only if p == 0, which valid windows exclude
}

} // namespace detail

/// The common eigenvalue s with Delta r = s r at every interior site, if any.
/// A harmonic window reports s = 0.
template <class S>
std::optional<S> eigen_scalar(const LatticeWindow<S>& w, const Tolerance& tol = {}) {
  if (w.imax() - w.imin() < 2 || w.jmax() - w.jmin() < 2)
    throw MissingStencil("eigen_scalar needs at least one interior site (3x3 window)");
  std::optional<S> common;
  for (int i = w.imin() + 1; i <= w.imax() - 1; ++i) {
    for (int j = w.jmin() + 1; j <= w.jmax() - 1; ++j) {
      std::optional<S> s = detail::proportionality(laplacian(w, i, j), w.at(i, j), tol);
      if (!s) return std::nullopt;
      if (!common) {
        common = s;
      } else if (!is_zero(S(*s - *common), *common, tol)) {
        return std::nullopt;
      }
    }
  }
  return common;
}

/// Harmonicity criterion for constant coefficients: three closed-form
/// conditions in the invariants. When the set is compatible, the result is
/// cross-checked against the Laplacian of the canonical 7-point stencil.
template <class S>
bool harmonic_constant_check(const CoefficientSet<S>& s, const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  const S one = T::from_int(1);
  if (is_zero(s.alpha, s.alpha, tol)) throw ZeroDenominator("alpha = 0");
  if (is_zero(s.gamma, s.gamma, tol)) throw ZeroDenominator("gamma = 0");
  if (is_zero(s.b, s.b, tol)) throw ZeroDenominator("b = 0");
  if (is_zero(s.c, s.c, tol)) throw ZeroDenominator("c = 0");

  S six = T::from_int(6);
  S e1 = S((one + s.alpha - s.beta) * (one / s.alpha + s.b / s.c) +
           (one + s.gamma - s.delta) * (one / s.gamma + s.c / s.b) - s.c / s.b -
           s.b / s.c);
  S e2 = S(s.delta / s.gamma * (one + s.alpha) -
           (one / s.alpha * (one + s.gamma) - one / s.b - one));
  S e3 = S(s.beta / s.alpha * (one + s.gamma) -
           (one / s.gamma * (one + s.alpha) - one / s.c - one));
  bool result = is_zero(S(e1 - six), six, tol) && is_zero(e2, one, tol) &&
                is_zero(e3, one, tol);

  S detA = S(s.c * s.alpha);
  S detB = S(s.b * s.gamma);
  if (constant_compatible(s, tol) && !is_zero(detA, detA, tol) &&
      !is_zero(detB, detB, tol)) {
    LatticeWindow<S> stencil = synthesize(s, -1, 1, -1, 1);
    bool direct = is_zero(linf(laplacian(stencil, 0, 0)),
                          linf(stencil.at(0, 0)), tol);
    if (direct != result)
      throw Error("harmonic_constant_check: closed form disagrees with the "
                  "synthesized stencil Laplacian");
  }
  return result;
}

enum class Convexity { convex_strict, convex_degenerate, non_convex, undecidable_boundary };

inline const char* to_string(Convexity c) {
  switch (c) {
    case Convexity::convex_strict: return "convex_strict";
    case Convexity::convex_degenerate: return "convex_degenerate";
    case Convexity::non_convex: return "non_convex";
    case Convexity::undecidable_boundary: return "undecidable_boundary";
  }
  return "?";
}

template <class S>
struct ConvexityResult {
  Convexity cls = Convexity::undecidable_boundary;
  // det[r1-r, r2-r, X-r] over the second ring, in the order of
  // convexity_ring_offsets().
  std::array<S, 8> dets{};
};

/// (di,dj) of the eight second-ring points, in the order
/// r_1b1b, r_1b2b, r_2b2b, r_12b, r_1b2, r_11, r_12, r_22.
inline constexpr std::array<std::pair<int, int>, 8> convexity_ring_offsets() {
  return {{{-2, 0}, {-1, -1}, {0, -2}, {1, -1}, {-1, 1}, {2, 0}, {1, 1}, {0, 2}}};
}

/// Classifies local convexity at (i,j) from the signs of the eight
/// determinants det[r1-r, r2-r, X-r] over the second ring: strictly one sign
/// -> convex_strict; one sign allowing zeros (at least one nonzero) ->
/// convex_degenerate; otherwise non_convex. Sites whose second ring leaves
/// the window are undecidable_boundary.
template <class S>
ConvexityResult<S> convexity_at(const LatticeWindow<S>& w, int i, int j,
                                const Tolerance& tol = {}) {
  ConvexityResult<S> out;
  auto offsets = convexity_ring_offsets();
  for (auto [di, dj] : offsets)
    if (!w.contains(i + di, j + dj)) return out; // undecidable_boundary
  if (!w.contains(i + 1, j) || !w.contains(i, j + 1)) return out;

  const Point3<S>& r = w.at(i, j);
  Point3<S> u = w.at(i + 1, j) - r;
  Point3<S> v = w.at(i, j + 1) - r;
  int pos = 0, neg = 0, zero = 0;
  for (size_t k = 0; k < offsets.size(); ++k) {
    auto [di, dj] = offsets[k];
    Point3<S> x = w.at(i + di, j + dj) - r;
    S d = det3(u, v, x);
    out.dets[k] = d;
    if (is_zero(d, det3_scale(u, v, x), tol))
      ++zero;
    else if (scalar_traits<S>::sign(d) > 0)
      ++pos;
    else
      ++neg;
  }
  if (pos > 0 && neg > 0)
    out.cls = Convexity::non_convex;
  else if (zero == 8)
    out.cls = Convexity::non_convex; // whole ring in the tangent plane: no side
  else if (zero == 0)
    out.cls = Convexity::convex_strict;
  else
    out.cls = Convexity::convex_degenerate;
  return out;
}

/// The eight coefficient-side convexity conditions:
/// delta >= 0, beta >= 0, c_1b (a_1b - 1)(a - 1) < 0, b_2b (a_2b - 1)(a - 1) < 0,
/// delta_2b2b / gamma_2b2b >= 0, beta_1b1b / alpha_1b1b >= 0,
/// gamma_1b2b < 0, alpha_1b2b < 0.
template <class S>
bool convexity_from_coefficients(const CoefficientField<S>& f, int i, int j,
                                 const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  const S one = T::from_int(1);
  const CoefficientSet<S>& s = f.at(i, j);
  const CoefficientSet<S>& s1b = f.at(i - 1, j);
  const CoefficientSet<S>& s2b = f.at(i, j - 1);
  const CoefficientSet<S>& s1b1b = f.at(i - 2, j);
  const CoefficientSet<S>& s2b2b = f.at(i, j - 2);
  const CoefficientSet<S>& s1b2b = f.at(i - 1, j - 1);

  if (is_zero(s2b2b.gamma, s2b2b.gamma, tol))
    throw ZeroDenominator("gamma_2b2b = 0 at site (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
  if (is_zero(s1b1b.alpha, s1b1b.alpha, tol))
    throw ZeroDenominator("alpha_1b1b = 0 at site (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");

  auto nonneg = [&](const S& v) { return T::sign(v) >= 0 || is_zero(v, v, tol); };
  auto negative = [&](const S& v) { return T::sign(v) < 0 && !is_zero(v, v, tol); };

  return nonneg(s.delta) && nonneg(s.beta) &&
         negative(S(s1b.c * (s1b.a - one) * (s.a - one))) &&
         negative(S(s2b.b * (s2b.a - one) * (s.a - one))) &&
         nonneg(S(s2b2b.delta / s2b2b.gamma)) &&
         nonneg(S(s1b1b.beta / s1b1b.alpha)) && negative(s1b2b.gamma) &&
         negative(s1b2b.alpha);
}

/// Constant-coefficient convexity criterion:
/// alpha = c < 0, gamma = b < 0, beta = delta = 0, a = b + c - bc.
template <class S>
bool constant_convex_check(const CoefficientSet<S>& s, const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  auto zero = [&](const S& v, const S& scale) { return is_zero(v, scale, tol); };
  bool alpha_c = zero(S(s.alpha - s.c), s.c) && T::sign(s.c) < 0 && !zero(s.c, s.c);
  bool gamma_b = zero(S(s.gamma - s.b), s.b) && T::sign(s.b) < 0 && !zero(s.b, s.b);
  bool bd_zero = zero(s.beta, s.beta) && zero(s.delta, s.delta);
  bool a_rel = zero(S(s.a - (s.b + s.c - s.b * s.c)), s.a);
  return alpha_c && gamma_b && bd_zero && a_rel;
}

/// Cone volumes of the six-triangle vertex star and of its tangent-plane
/// counterpart, each computed two ways: a direct signed sum over the
/// triangles and the closed form in d, b, c and the cell volumes V.
template <class S>
struct StarVolumes {
  S star, tangent;               // direct triangle sums
  S star_closed, tangent_closed; // closed forms
};

template <class S>
StarVolumes<S> star_volumes(const LatticeWindow<S>& w, int i, int j,
                            const Tolerance& tol = {}) {
  using T = scalar_traits<S>;
  const S six = T::from_int(6);
  const Point3<S>& r = w.at(i, j);
  const Point3<S>& r1 = w.at(i + 1, j);
  const Point3<S>& r2 = w.at(i, j + 1);
  const Point3<S>& r1b = w.at(i - 1, j);
  const Point3<S>& r2b = w.at(i, j - 1);
  const Point3<S>& ne = w.at(i + 1, j - 1); // r(i+1,j-1)
  const Point3<S>& nw = w.at(i - 1, j + 1); // r(i-1,j+1)

  // The six oriented faces of star(r(i,j)); lower-left triangles are
  // (r, r_1, r_2), upper-right triangles (r_1, r_12, r_2) of their cell.
  S star = S((det3(r, r1, r2) +        // lower-left of cell (i,j)
              det3(r1b, r, nw) +       // lower-left of cell (i-1,j)
              det3(r2b, ne, r) +       // lower-left of cell (i,j-1)
              det3(r, r2, nw) +        // upper-right of cell (i-1,j)
              det3(ne, r1, r) +        // upper-right of cell (i,j-1)
              det3(r2b, r, r1b)) /     // upper-right of cell (i-1,j-1)
             six);

  // Tangent-plane star: the four triangles spanned inside the tangent plane.
  S tangent = S((det3(r2b, r, r1b) + det3(r1b, r, r2) + det3(r2b, r1, r) +
                 det3(r, r1, r2)) /
                six);

  // Closed forms; d at the three lower-left cells via the determinant ratios.
  ABC<S> c_mm = extract_abc(w, i - 1, j - 1, tol);
  ABC<S> c_m0 = extract_abc(w, i - 1, j, tol);
  ABC<S> c_0m = extract_abc(w, i, j - 1, tol);
  S v_mm = triangle_volume(w, i - 1, j - 1);
  S v_m0 = triangle_volume(w, i - 1, j);
  S v_0m = triangle_volume(w, i, j - 1);
  S v_00 = triangle_volume(w, i, j);
  const S one = T::from_int(1);
  S d_mm = S(c_mm.a - c_mm.b - c_mm.c);
  S d_m0 = S(c_m0.a - c_m0.b - c_m0.c);
  S d_0m = S(c_0m.a - c_0m.b - c_0m.c);
  S star_closed =
      S(-d_mm * v_mm + (one - d_m0) * v_m0 + (one - d_0m) * v_0m + v_00);
  S tangent_closed = S(-d_mm * v_mm + c_m0.c * v_m0 + c_0m.b * v_0m + v_00);

  S scale = T::abs(v_mm);
  if (T::abs(v_m0) > scale) scale = T::abs(v_m0);
  if (T::abs(v_0m) > scale) scale = T::abs(v_0m);
  if (T::abs(v_00) > scale) scale = T::abs(v_00);
  if (!is_zero(S(star - star_closed), scale, tol) ||
      !is_zero(S(tangent - tangent_closed), scale, tol))
    throw Error("star volume closed form disagrees with the triangle sum at (" +
                std::to_string(i) + "," + std::to_string(j) + ")");
  return {star, tangent, star_closed, tangent_closed};
}

/// Per-site record of the window analysis.
template <class S>
struct SiteAnalysis {
  int i, j;
  Point3<S> laplacian;
  S harmonic_residual;
  std::optional<S> eigen_s;
  Convexity convexity;
  S star_volume, tangent_star_volume;
};

template <class S>
struct AnalysisReport {
  int imin, imax, jmin, jmax;
  std::vector<SiteAnalysis<S>> sites; // interior sites, row-major
  bool harmonic;
  S max_harmonic_residual;
  std::optional<S> eigen_s;
  bool convex_everywhere; // all decidable sites convex, at least one decidable
};

template <class S>
AnalysisReport<S> analyze_window(const LatticeWindow<S>& w, const Tolerance& tol = {}) {
  HarmonicCheck<S> hc = harmonic_check(w, tol);
  AnalysisReport<S> report{w.imin(), w.imax(), w.jmin(), w.jmax(), {},
                           hc.harmonic,  hc.max_residual, eigen_scalar(w, tol), false};
  int decidable = 0, convex = 0;
  for (int i = w.imin() + 1; i <= w.imax() - 1; ++i) {
    for (int j = w.jmin() + 1; j <= w.jmax() - 1; ++j) {
      SiteAnalysis<S> site{i,
                           j,
                           laplacian(w, i, j),
                           {},
                           std::nullopt,
                           Convexity::undecidable_boundary,
                           {},
                           {}};
      site.harmonic_residual = linf(site.laplacian);
      site.eigen_s = detail::proportionality(site.laplacian, w.at(i, j), tol);
      ConvexityResult<S> cx = convexity_at(w, i, j, tol);
      site.convexity = cx.cls;
      if (cx.cls != Convexity::undecidable_boundary) {
        ++decidable;
        if (cx.cls != Convexity::non_convex) ++convex;
      }
      StarVolumes<S> sv = star_volumes(w, i, j, tol);
      site.star_volume = sv.star;
      site.tangent_star_volume = sv.tangent;
      report.sites.push_back(std::move(site));
    }
  }
  report.convex_everywhere = decidable > 0 && decidable == convex;
  return report;
}

} // namespace calat
