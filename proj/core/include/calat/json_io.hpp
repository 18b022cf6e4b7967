#pragma once

#include <nlohmann/json.hpp>

#include "calat/analysis.hpp"
#include "calat/compatibility.hpp"
#include "calat/lattice.hpp"

namespace calat {

// File formats. Keys are emitted in a fixed order and number rendering is
// deterministic, so identical inputs serialize byte-identically. Rational
// scalars travel as "p/q" strings (bit-exact), floats as JSON numbers.
// Either backend accepts both forms on input.

using json = nlohmann::ordered_json;

template <class S>
json scalar_to_json(const S& v) {
  if constexpr (scalar_traits<S>::is_exact)
    return scalar_traits<S>::to_string(v);
  else
    return v;
}

template <class S>
S scalar_from_json(const json& j) {
  if (j.is_string()) return scalar_traits<S>::parse(j.template get<std::string>());
  if (j.is_number_integer()) {
    return scalar_traits<S>::from_int(j.template get<long>());
  }
  if (j.is_number_float()) {
    double d = j.template get<double>();
    if (!std::isfinite(d)) throw InvalidInput("non-finite number in JSON");
    if constexpr (scalar_traits<S>::is_exact) {
      Rational r;
      mpq_set_d(r.get_mpq_t(), d);
      return r;
    } else {
      return d;
    }
  }
  throw ParseError("expected a number or \"p/q\" string, got: " + j.dump());
}

/// Canonical dump: two-space indent, trailing newline.
inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// ---- lattice windows -------------------------------------------------------

template <class S>
json lattice_to_json(const LatticeWindow<S>& w) {
  json j;
  j["imin"] = w.imin();
  j["imax"] = w.imax();
  j["jmin"] = w.jmin();
  j["jmax"] = w.jmax();
  json pts = json::array();
  for (int i = w.imin(); i <= w.imax(); ++i) {
    for (int jj = w.jmin(); jj <= w.jmax(); ++jj) {
      const Point3<S>& p = w.at(i, jj);
      json e;
      e["i"] = i;
      e["j"] = jj;
      e["xyz"] = json::array(
          {scalar_to_json(p.x), scalar_to_json(p.y), scalar_to_json(p.z)});
      pts.push_back(std::move(e));
    }
  }
  j["points"] = std::move(pts);
  return j;
}

template <class S>
LatticeWindow<S> lattice_from_json(const json& j) {
  for (const char* key : {"imin", "imax", "jmin", "jmax", "points"})
    if (!j.contains(key))
      throw ParseError(std::string("lattice JSON: missing key '") + key + "'");
  LatticeWindow<S> w(j["imin"].template get<int>(), j["imax"].template get<int>(),
                     j["jmin"].template get<int>(), j["jmax"].template get<int>());
  for (const json& e : j["points"]) {
    int i = e.at("i").template get<int>();
    int jj = e.at("j").template get<int>();
    const json& xyz = e.at("xyz");
    if (!xyz.is_array() || xyz.size() != 3)
      throw ParseError("lattice JSON: 'xyz' must be a 3-element array");
    if (w.is_set(i, jj))
      throw ParseError("lattice JSON: duplicate point (" + std::to_string(i) + "," +
                       std::to_string(jj) + ")");
    w.set(i, jj,
          {scalar_from_json<S>(xyz[0]), scalar_from_json<S>(xyz[1]),
           scalar_from_json<S>(xyz[2])});
  }
  if (!w.fully_populated())
    throw ParseError("lattice JSON: rectangle has missing points");
  return w;
}

// ---- coefficient sets and fields -------------------------------------------

template <class S>
json set_to_json(const CoefficientSet<S>& s) {
  json j;
  j["a"] = scalar_to_json(s.a);
  j["b"] = scalar_to_json(s.b);
  j["c"] = scalar_to_json(s.c);
  j["alpha"] = scalar_to_json(s.alpha);
  j["beta"] = scalar_to_json(s.beta);
  j["gamma"] = scalar_to_json(s.gamma);
  j["delta"] = scalar_to_json(s.delta);
  return j;
}

template <class S>
CoefficientSet<S> set_from_json(const json& j) {
  for (const char* key : {"a", "b", "c", "alpha", "beta", "gamma", "delta"})
    if (!j.contains(key))
      throw ParseError(std::string("coefficient set JSON: missing key '") + key + "'");
  return {scalar_from_json<S>(j["a"]),     scalar_from_json<S>(j["b"]),
          scalar_from_json<S>(j["c"]),     scalar_from_json<S>(j["alpha"]),
          scalar_from_json<S>(j["beta"]),  scalar_from_json<S>(j["gamma"]),
          scalar_from_json<S>(j["delta"])};
}

template <class S>
json field_to_json(const CoefficientField<S>& f) {
  json j;
  j["imin"] = f.imin();
  j["imax"] = f.imax();
  j["jmin"] = f.jmin();
  j["jmax"] = f.jmax();
  json sets = json::array();
  for (int i = f.imin(); i <= f.imax(); ++i) {
    for (int jj = f.jmin(); jj <= f.jmax(); ++jj) {
      json e;
      e["i"] = i;
      e["j"] = jj;
      const CoefficientSet<S>& s = f.at(i, jj);
      e["a"] = scalar_to_json(s.a);
      e["b"] = scalar_to_json(s.b);
      e["c"] = scalar_to_json(s.c);
      e["alpha"] = scalar_to_json(s.alpha);
      e["beta"] = scalar_to_json(s.beta);
      e["gamma"] = scalar_to_json(s.gamma);
      e["delta"] = scalar_to_json(s.delta);
      sets.push_back(std::move(e));
    }
  }
  j["sets"] = std::move(sets);
  return j;
}

template <class S>
CoefficientField<S> field_from_json(const json& j) {
  for (const char* key : {"imin", "imax", "jmin", "jmax", "sets"})
    if (!j.contains(key))
      throw ParseError(std::string("coefficient field JSON: missing key '") + key +
                       "'");
  CoefficientField<S> f(j["imin"].template get<int>(), j["imax"].template get<int>(),
                        j["jmin"].template get<int>(), j["jmax"].template get<int>());
  std::vector<char> seen(static_cast<size_t>(f.rows()) * f.cols(), 0);
  for (const json& e : j["sets"]) {
    int i = e.at("i").template get<int>();
    int jj = e.at("j").template get<int>();
    if (!f.contains(i, jj))
      throw ParseError("coefficient field JSON: site (" + std::to_string(i) + "," +
                       std::to_string(jj) + ") outside the rectangle");
    size_t idx = static_cast<size_t>(i - f.imin()) * f.cols() +
                 static_cast<size_t>(jj - f.jmin());
    if (seen[idx])
      throw ParseError("coefficient field JSON: duplicate site (" +
                       std::to_string(i) + "," + std::to_string(jj) + ")");
    seen[idx] = 1;
    f.at(i, jj) = set_from_json<S>(e);
  }
  for (char s : seen)
    if (!s) throw ParseError("coefficient field JSON: rectangle has missing sites");
  return f;
}

// ---- Tzitzeica data ---------------------------------------------------------

template <class S>
json tzitzeica_to_json(const TzitzeicaData<S>& t) {
  json j;
  j["imin"] = t.imin();
  j["imax"] = t.imax();
  j["jmin"] = t.jmin();
  j["jmax"] = t.jmax();
  json sets = json::array();
  for (int i = t.imin(); i <= t.imax(); ++i) {
    for (int jj = t.jmin(); jj <= t.jmax(); ++jj) {
      json e;
      e["i"] = i;
      e["j"] = jj;
      e["H"] = scalar_to_json(t.at(i, jj).H);
      e["A"] = scalar_to_json(t.at(i, jj).A);
      e["B"] = scalar_to_json(t.at(i, jj).B);
      sets.push_back(std::move(e));
    }
  }
  j["sets"] = std::move(sets);
  return j;
}

template <class S>
TzitzeicaData<S> tzitzeica_from_json(const json& j) {
  for (const char* key : {"imin", "imax", "jmin", "jmax", "sets"})
    if (!j.contains(key))
      throw ParseError(std::string("Tzitzeica JSON: missing key '") + key + "'");
  TzitzeicaData<S> t(j["imin"].template get<int>(), j["imax"].template get<int>(),
                     j["jmin"].template get<int>(), j["jmax"].template get<int>());
  for (const json& e : j["sets"]) {
    int i = e.at("i").template get<int>();
    int jj = e.at("j").template get<int>();
    t.at(i, jj) = {scalar_from_json<S>(e.at("H")), scalar_from_json<S>(e.at("A")),
                   scalar_from_json<S>(e.at("B"))};
  }
  return t;
}

// ---- analysis report --------------------------------------------------------

template <class S>
json report_to_json(const AnalysisReport<S>& r) {
  json j;
  j["imin"] = r.imin;
  j["imax"] = r.imax;
  j["jmin"] = r.jmin;
  j["jmax"] = r.jmax;
  json sites = json::array();
  for (const SiteAnalysis<S>& s : r.sites) {
    json e;
    e["i"] = s.i;
    e["j"] = s.j;
    e["laplacian"] = json::array({scalar_to_json(s.laplacian.x),
                                  scalar_to_json(s.laplacian.y),
                                  scalar_to_json(s.laplacian.z)});
    e["harmonic_residual"] = scalar_to_json(s.harmonic_residual);
    if (s.eigen_s) e["eigen_s"] = scalar_to_json(*s.eigen_s);
    e["convexity"] = to_string(s.convexity);
    e["star_volume"] = scalar_to_json(s.star_volume);
    e["tangent_star_volume"] = scalar_to_json(s.tangent_star_volume);
    sites.push_back(std::move(e));
  }
  j["sites"] = std::move(sites);
  json summary;
  summary["harmonic"] = r.harmonic;
  if (r.eigen_s) summary["eigen_s"] = scalar_to_json(*r.eigen_s);
  summary["convex_everywhere"] = r.convex_everywhere;
  j["summary"] = std::move(summary);
  return j;
}

} // namespace calat
