#pragma once

#include <map>
#include <utility>

#include "calat/compatibility.hpp"
#include "calat/frame.hpp"
#include "calat/lattice.hpp"

namespace calat {

enum class Step { forward_i, backward_i, forward_j, backward_j };

namespace detail {

/// Uniform access to constant-set and per-site coefficients.
template <class S>
class CoefficientSource {
public:
  explicit CoefficientSource(const CoefficientSet<S>& s) : set_(&s) {}
  explicit CoefficientSource(const CoefficientField<S>& f) : field_(&f) {}

  const CoefficientSet<S>& at(int i, int j) const {
    if (set_) return *set_;
    if (!field_->contains(i, j))
      throw MissingStencil("synthesis needs a coefficient set at (" +
                           std::to_string(i) + "," + std::to_string(j) +
                           ") which the field does not cover");
    return field_->at(i, j);
  }

  bool constant() const { return set_ != nullptr; }
  const CoefficientField<S>* field() const { return field_; }

private:
  const CoefficientSet<S>* set_ = nullptr;
  const CoefficientField<S>* field_ = nullptr;
};

template <class S>
Matrix3<S> step_matrix_A(const CoefficientSource<S>& src, int i, int j,
                         const Tolerance& tol) {
  const CoefficientSet<S>& s = src.at(i, j);
  S det = S(s.c * s.alpha);
  if (is_zero(det, det, tol))
    throw SingularTransition("c*alpha = 0 at (" + std::to_string(i) + "," +
                             std::to_string(j) + "): A is singular");
  return transition_matrices(s).A;
}

template <class S>
Matrix3<S> step_matrix_B(const CoefficientSource<S>& src, int i, int j,
                         const Tolerance& tol) {
  const CoefficientSet<S>& s = src.at(i, j);
  S det = S(s.b * s.gamma);
  if (is_zero(det, det, tol))
    throw SingularTransition("b*gamma = 0 at (" + std::to_string(i) + "," +
                             std::to_string(j) + "): B is singular");
  return transition_matrices(s).B;
}

template <class S>
Frame<S> propagate(const Frame<S>& f, Step step, const CoefficientSource<S>& src,
                   const Tolerance& tol) {
  switch (step) {
    case Step::forward_i:
      return f.right_multiplied(step_matrix_A(src, f.m, f.n, tol), f.m + 1, f.n);
    case Step::forward_j:
      return f.right_multiplied(step_matrix_B(src, f.m, f.n, tol), f.m, f.n + 1);
    case Step::backward_i:
      // Backward transport multiplies by the inverse matrix of the target site.
      return f.right_multiplied(step_matrix_A(src, f.m - 1, f.n, tol).inverse(),
                                f.m - 1, f.n);
    case Step::backward_j:
      return f.right_multiplied(step_matrix_B(src, f.m, f.n - 1, tol).inverse(), f.m,
                                f.n - 1);
  }
  throw Error("unreachable");
}

} // namespace detail

template <class S>
Frame<S> propagate_frame(const Frame<S>& f, Step step, const CoefficientSet<S>& s,
                         const Tolerance& tol = {}) {
  return detail::propagate(f, step, detail::CoefficientSource<S>(s), tol);
}

template <class S>
Frame<S> propagate_frame(const Frame<S>& f, Step step, const CoefficientField<S>& fld,
                         const Tolerance& tol = {}) {
  return detail::propagate(f, step, detail::CoefficientSource<S>(fld), tol);
}

namespace detail {

template <class S>
void check_source_compatible(const CoefficientSource<S>& src, const Tolerance& tol) {
  if (src.constant()) {
    if (!constant_compatible(src.at(0, 0), tol))
      throw IncompatibleField(
          "constant coefficients fail -alpha*b = -gamma*c = a-b-c = bc(beta*delta-1)");
    return;
  }
  const CoefficientField<S>& f = *src.field();
  for (int i = f.imin(); i <= f.imax() - 1; ++i) {
    for (int j = f.jmin(); j <= f.jmax() - 1; ++j) {
      CompatResiduals<S> res = scalar_residuals(f, i, j, tol);
      S worst = res.max_abs();
      if (!is_zero(worst, worst, tol)) {
        std::string which;
        res.for_each([&](const char* name, const S& v) {
          if (which.empty() && !is_zero(v, v, tol)) which = name;
        });
        throw IncompatibleField("coefficient field incompatible at site (" +
                                std::to_string(i) + "," + std::to_string(j) + "): " +
                                which + " = " + scalar_traits<S>::to_string(worst));
      }
    }
  }
}

} // namespace detail

/// Builds every lattice point of `rect` by frame transport from `initial`:
/// along row n = 0 first, then along each column, negative indices through
/// the inverse matrices at the target sites. Every point is stored once;
/// frames overlap, and any disagreement between a stored point and a frame
/// column aborts with a diagnostic instead of being averaged away.
template <class S>
LatticeWindow<S> synthesize(const detail::CoefficientSource<S>& src, int imin,
                            int imax, int jmin, int jmax, const Frame<S>& initial,
                            const Tolerance& tol) {
  if (!(imin <= 0 && imax >= 1 && jmin <= 0 && jmax >= 1))
    throw Error("synthesis window must contain (0,0), (1,0) and (0,1)");
  if (initial.m != 0 || initial.n != 0)
    throw Error("initial frame must be anchored at (0,0)");
  {
    S fd = initial.det();
    if (is_zero(fd, det3_scale(initial.c1, initial.c2, initial.c3), tol))
      throw Error("initial frame is degenerate");
  }
  detail::check_source_compatible(src, tol);

  LatticeWindow<S> w(imin, imax, jmin, jmax);
  auto place = [&](int i, int j, const Point3<S>& p) {
    if (!w.contains(i, j)) return;
    if (w.is_set(i, j)) {
      Point3<S> diff = w.at(i, j) - p;
      if (!is_zero(linf(diff), linf(p), tol))
        throw IncompatibleField("frame overlap mismatch at point (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
      return;
    }
    w.set(i, j, p);
  };
  auto place_frame = [&](const Frame<S>& f) {
    place(f.m, f.n, f.c1);
    place(f.m + 1, f.n, f.c2);
    place(f.m, f.n + 1, f.c3);
  };

  // Row n = 0 of frame anchors.
  std::map<int, Frame<S>> row;
  row.emplace(0, initial);
  for (int m = 1; m <= imax - 1; ++m)
    row.emplace(m, detail::propagate(row.at(m - 1), Step::forward_i, src, tol));
  for (int m = -1; m >= imin; --m)
    row.emplace(m, detail::propagate(row.at(m + 1), Step::backward_i, src, tol));

  // Columns, in deterministic row-major order. The last column marches one
  // step further: the frame anchored at (imax-1, jmax) carries the corner
  // point (imax, jmax) in its second column.
  for (int m = imin; m <= imax - 1; ++m) {
    Frame<S> f = row.at(m);
    place_frame(f);
    Frame<S> up = f;
    int top = (m == imax - 1) ? jmax : jmax - 1;
    for (int n = 1; n <= top; ++n) {
      up = detail::propagate(up, Step::forward_j, src, tol);
      place_frame(up);
    }
    Frame<S> down = f;
    for (int n = -1; n >= jmin; --n) {
      down = detail::propagate(down, Step::backward_j, src, tol);
      place_frame(down);
    }
  }
  return w;
}

template <class S>
LatticeWindow<S> synthesize(const CoefficientSet<S>& s, int imin, int imax, int jmin,
                            int jmax, const Frame<S>& initial = Frame<S>::canonical(),
                            const Tolerance& tol = {}) {
  return synthesize(detail::CoefficientSource<S>(s), imin, imax, jmin, jmax, initial,
                    tol);
}

template <class S>
LatticeWindow<S> synthesize(const CoefficientField<S>& f, int imin, int imax,
                            int jmin, int jmax,
                            const Frame<S>& initial = Frame<S>::canonical(),
                            const Tolerance& tol = {}) {
  return synthesize(detail::CoefficientSource<S>(f), imin, imax, jmin, jmax, initial,
                    tol);
}

/// Worked examples: constant coefficient sets with their default windows.
enum class ExampleName {
  example1,     // saddle-like surface
  example2,     // harmonic surface
  example3_d0,  // affine sphere, tetrahedron (beta = delta = 0)
  example3_d1,  // affine sphere, delta = 1
  example3_dm1, // affine sphere, delta = -1
  convex6       // locally convex surface
};

inline const char* to_string(ExampleName n) {
  switch (n) {
    case ExampleName::example1: return "example1";
    case ExampleName::example2: return "example2";
    case ExampleName::example3_d0: return "example3_d0";
    case ExampleName::example3_d1: return "example3_d1";
    case ExampleName::example3_dm1: return "example3_dm1";
    case ExampleName::convex6: return "convex6";
  }
  return "?";
}

inline ExampleName example_from_string(const std::string& s) {
  if (s == "example1") return ExampleName::example1;
  if (s == "example2") return ExampleName::example2;
  if (s == "example3_d0") return ExampleName::example3_d0;
  if (s == "example3_d1") return ExampleName::example3_d1;
  if (s == "example3_dm1") return ExampleName::example3_dm1;
  if (s == "convex6") return ExampleName::convex6;
  throw ParseError("unknown example '" + s +
                   "' (expected example1, example2, example3_d0, example3_d1, "
                   "example3_dm1 or convex6)");
}

struct ExampleRect {
  int imin, imax, jmin, jmax;
};

template <class S>
CoefficientSet<S> example_coefficients(ExampleName name) {
  using T = scalar_traits<S>;
  auto fr = [](long n, long d) { return scalar_traits<S>::from_fraction(n, d); };
  switch (name) {
    case ExampleName::example1:
      return {fr(3, 4), fr(1, 2), fr(1, 2), fr(1, 2), T::from_int(0), fr(1, 2),
              T::from_int(0)};
    case ExampleName::example2:
      return {fr(-1, 3), fr(1, 3), fr(-1, 3), T::from_int(1), T::from_int(2),
              T::from_int(-1), T::from_int(2)};
    case ExampleName::example3_d0:
      return {T::from_int(-3), T::from_int(-1), T::from_int(-1), T::from_int(-1),
              T::from_int(0), T::from_int(-1), T::from_int(0)};
    case ExampleName::example3_d1:
      return {T::from_int(-3), T::from_int(-1), T::from_int(-1), T::from_int(-1),
              T::from_int(0), T::from_int(-1), T::from_int(1)};
    case ExampleName::example3_dm1:
      return {T::from_int(-3), T::from_int(-1), T::from_int(-1), T::from_int(-1),
              T::from_int(0), T::from_int(-1), T::from_int(-1)};
    case ExampleName::convex6:
      return {T::from_int(-5), T::from_int(-1), T::from_int(-2), T::from_int(-2),
              T::from_int(0), T::from_int(-1), T::from_int(0)};
  }
  throw Error("unreachable");
}

inline ExampleRect example_window_rect(ExampleName name) {
  switch (name) {
    case ExampleName::example2: return {-1, 2, -1, 2};   // 16 points
    case ExampleName::example3_d0:
    case ExampleName::example3_d1:
    case ExampleName::example3_dm1: return {-1, 1, -1, 1}; // 9 vertices
    case ExampleName::example1:
    case ExampleName::convex6: return {-2, 2, -2, 2};    // 25 points
  }
  throw Error("unreachable");
}

template <class S>
std::pair<CoefficientSet<S>, LatticeWindow<S>> generate_example(ExampleName name) {
  CoefficientSet<S> s = example_coefficients<S>(name);
  ExampleRect r = example_window_rect(name);
  return {s, synthesize(s, r.imin, r.imax, r.jmin, r.jmax)};
}

} // namespace calat
