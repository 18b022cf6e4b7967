#pragma once

#include <sstream>
#include <string>

#include "calat/lattice.hpp"

namespace calat {

// Mesh export of the fixed lattice triangulation: every cell (i,j) carries
// the two oriented faces (r, r_1, r_2) and (r_1, r_12, r_2). Vertex order is
// row-major over the index rectangle.

namespace detail {

template <class S>
int vertex_index(const LatticeWindow<S>& w, int i, int j) {
  return (i - w.imin()) * w.cols() + (j - w.jmin());
}

template <class S, class Emit>
void for_each_face(const LatticeWindow<S>& w, Emit&& emit) {
  for (int i = w.imin(); i < w.imax(); ++i) {
    for (int j = w.jmin(); j < w.jmax(); ++j) {
      emit(vertex_index(w, i, j), vertex_index(w, i + 1, j), vertex_index(w, i, j + 1));
      emit(vertex_index(w, i + 1, j), vertex_index(w, i + 1, j + 1),
           vertex_index(w, i, j + 1));
    }
  }
}

} // namespace detail

/// Wavefront OBJ. Coordinates are shortest round-trip decimals; lattice
/// indices can be negative, so the linearization is spelled out in a comment
/// block (OBJ vertex references are 1-based).
template <class S>
std::string to_obj(const LatticeWindow<S>& w) {
  using T = scalar_traits<S>;
  std::ostringstream out;
  out << "# lattice window: i in [" << w.imin() << "," << w.imax() << "], j in ["
      << w.jmin() << "," << w.jmax() << "]\n";
  out << "# vertex k corresponds to lattice site (i,j) with k = 1 + (i-(" << w.imin()
      << "))*" << w.cols() << " + (j-(" << w.jmin() << "))\n";
  for (int i = w.imin(); i <= w.imax(); ++i)
    for (int j = w.jmin(); j <= w.jmax(); ++j)
      out << "# v " << detail::vertex_index(w, i, j) + 1 << " <- r(" << i << "," << j
          << ")\n";
  auto coord = [](const S& v) { return detail::double_shortest(T::to_double(v)); };
  for (int i = w.imin(); i <= w.imax(); ++i) {
    for (int j = w.jmin(); j <= w.jmax(); ++j) {
      const Point3<S>& p = w.at(i, j);
      out << "v " << coord(p.x) << " " << coord(p.y) << " " << coord(p.z) << "\n";
    }
  }
  detail::for_each_face(w, [&](int a, int b, int c) {
    out << "f " << a + 1 << " " << b + 1 << " " << c + 1 << "\n";
  });
  return out.str();
}

/// OFF with a configurable number of significant digits (higher digit counts
/// preserve more of an exact-rational lattice).
template <class S>
std::string to_off(const LatticeWindow<S>& w, int digits = 17) {
  using T = scalar_traits<S>;
  int nv = w.rows() * w.cols();
  int nf = 2 * (w.rows() - 1) * (w.cols() - 1);
  std::ostringstream out;
  out << "OFF\n" << nv << " " << nf << " 0\n";
  for (int i = w.imin(); i <= w.imax(); ++i) {
    for (int j = w.jmin(); j <= w.jmax(); ++j) {
      const Point3<S>& p = w.at(i, j);
      out << T::to_decimal(p.x, digits) << " " << T::to_decimal(p.y, digits) << " "
          << T::to_decimal(p.z, digits) << "\n";
    }
  }
  detail::for_each_face(
      w, [&](int a, int b, int c) { out << "3 " << a << " " << b << " " << c << "\n"; });
  return out.str();
}

} // namespace calat
