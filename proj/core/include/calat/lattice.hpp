#pragma once

#include <string>
#include <vector>

#include "calat/matrix.hpp"
#include "calat/point.hpp"

namespace calat {

/// Finite rectangular patch of the integer lattice mapped to R^3. Storage is
/// dense over the index rectangle; a finished window has every site set.
template <class S>
class LatticeWindow {
public:
  LatticeWindow(int imin, int imax, int jmin, int jmax)
      : imin_(imin), imax_(imax), jmin_(jmin), jmax_(jmax) {
    if (imax < imin + 1 || jmax < jmin + 1)
      throw Error("lattice window must contain at least one cell, got i in [" +
                  std::to_string(imin) + "," + std::to_string(imax) + "], j in [" +
                  std::to_string(jmin) + "," + std::to_string(jmax) + "]");
    points_.resize(static_cast<size_t>(rows()) * cols());
    set_.assign(points_.size(), 0);
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

  bool is_set(int i, int j) const { return contains(i, j) && set_[index(i, j)]; }

  const Point3<S>& at(int i, int j) const {
    if (!contains(i, j))
      throw MissingStencil("point (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is outside the window");
    if (!set_[index(i, j)])
      throw MissingStencil("point (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is not populated");
    return points_[index(i, j)];
  }

  void set(int i, int j, Point3<S> p) {
    if (!contains(i, j))
      throw MissingStencil("point (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is outside the window");
    if constexpr (!scalar_traits<S>::is_exact) {
      if (!finite(p))
        throw InvalidInput("non-finite coordinates at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")");
    }
    points_[index(i, j)] = std::move(p);
    set_[index(i, j)] = 1;
  }

  bool fully_populated() const {
    for (char s : set_)
      if (!s) return false;
    return true;
  }

  friend bool operator==(const LatticeWindow& a, const LatticeWindow& b) {
    return a.imin_ == b.imin_ && a.imax_ == b.imax_ && a.jmin_ == b.jmin_ &&
           a.jmax_ == b.jmax_ && a.set_ == b.set_ && a.points_ == b.points_;
  }

private:
  size_t index(int i, int j) const {
    return static_cast<size_t>(i - imin_) * cols() + static_cast<size_t>(j - jmin_);
  }

  int imin_, imax_, jmin_, jmax_;
  std::vector<Point3<S>> points_;
  std::vector<char> set_;
};

enum class WindowCondition {
  coplanarity_e1,          // (a): det[r1-r, r2-r, r-r1bar] must vanish
  coplanarity_e2,          // (a): det[r1-r, r2-r, r-r2bar] must vanish
  origin_in_tangent_plane, // (b): a nondegeneracy determinant vanished, plane hits O
  collinear_triple         // (c): r, r_eps1, r_eps2 collinear
};

inline const char* to_string(WindowCondition c) {
  switch (c) {
    case WindowCondition::coplanarity_e1: return "condition (a): det[r1-r, r2-r, r-r1bar] != 0";
    case WindowCondition::coplanarity_e2: return "condition (a): det[r1-r, r2-r, r-r2bar] != 0";
    case WindowCondition::origin_in_tangent_plane: return "condition (b): tangent plane passes through the origin";
    case WindowCondition::collinear_triple: return "condition (c): collinear point triple";
  }
  return "?";
}

template <class S>
struct WindowViolation {
  int i, j;
  WindowCondition condition;
  std::string determinant; // which determinant, in shift notation (r1 = +e1 neighbor)
  S value;                 // its offending value
};

template <class S>
struct ValidationReport {
  std::vector<WindowViolation<S>> violations;
  int sites_checked = 0;
  bool ok() const { return violations.empty(); }
};

/// Checks Definition 3.1 at every site whose four axis neighbors exist:
/// coplanarity of {r, r1, r2, r1bar, r2bar} and nonvanishing of the four
/// neighbor-triple determinants.
template <class S>
ValidationReport<S> validate_window(const LatticeWindow<S>& w,
                                    const Tolerance& tol = {}) {
  ValidationReport<S> report;
  for (int i = w.imin() + 1; i <= w.imax() - 1; ++i) {
    for (int j = w.jmin() + 1; j <= w.jmax() - 1; ++j) {
      ++report.sites_checked;
      const Point3<S>& r = w.at(i, j);
      const Point3<S>& r1 = w.at(i + 1, j);
      const Point3<S>& r2 = w.at(i, j + 1);
      const Point3<S>& r1b = w.at(i - 1, j);
      const Point3<S>& r2b = w.at(i, j - 1);

      Point3<S> u = r1 - r;
      Point3<S> v = r2 - r;
      S cop1 = det3(u, v, Point3<S>(r - r1b));
      if (!is_zero(cop1, det3_scale(u, v, Point3<S>(r - r1b)), tol))
        report.violations.push_back(
            {i, j, WindowCondition::coplanarity_e1, "det[r1-r, r2-r, r-r1bar]", cop1});
      S cop2 = det3(u, v, Point3<S>(r - r2b));
      if (!is_zero(cop2, det3_scale(u, v, Point3<S>(r - r2b)), tol))
        report.violations.push_back(
            {i, j, WindowCondition::coplanarity_e2, "det[r1-r, r2-r, r-r2bar]", cop2});

      struct Triple {
        const Point3<S>*a, *b;
        const char* label;
      };
      const Triple triples[4] = {{&r1, &r2, "det[r1, r2, r]"},
                                 {&r1b, &r2b, "det[r1bar, r2bar, r]"},
                                 {&r1, &r2b, "det[r1, r2bar, r]"},
                                 {&r1b, &r2, "det[r1bar, r2, r]"}};
      for (const Triple& t : triples) {
        S d = det3(*t.a, *t.b, r);
        if (is_zero(d, det3_scale(*t.a, *t.b, r), tol)) {
          Point3<S> n = cross(Point3<S>(*t.a - r), Point3<S>(*t.b - r));
          bool collinear = is_zero(linf(n), S(linf(*t.a - r) * linf(*t.b - r)), tol);
          report.violations.push_back({i, j,
                                       collinear ? WindowCondition::collinear_triple
                                                 : WindowCondition::origin_in_tangent_plane,
                                       t.label, d});
        }
      }
    }
  }
  return report;
}

/// Window with every point mapped through a linear transformation.
template <class S>
LatticeWindow<S> transformed(const LatticeWindow<S>& w, const Matrix3<S>& P) {
  LatticeWindow<S> out(w.imin(), w.imax(), w.jmin(), w.jmax());
  for (int i = w.imin(); i <= w.imax(); ++i)
    for (int j = w.jmin(); j <= w.jmax(); ++j)
      if (w.is_set(i, j)) out.set(i, j, apply(P, w.at(i, j)));
  return out;
}

} // namespace calat
