#include <doctest.h>

#include "test_helpers.hpp"

using namespace calat;
using testutil::leibniz_det3;
using R = Rational;

TEST_CASE("scalar backends parse and format") {
  CHECK(scalar_traits<R>::parse("-1/3") == R(-1, 3));
  CHECK(scalar_traits<R>::parse("7") == 7);
  CHECK(scalar_traits<R>::parse("2/6") == R(1, 3)); // canonicalized
  CHECK(scalar_traits<R>::to_string(R(-1, 3)) == "-1/3");
  CHECK(scalar_traits<R>::to_string(R(4)) == "4");
  CHECK(scalar_traits<double>::parse("0.25") == 0.25);
  CHECK(scalar_traits<double>::parse("1/4") == 0.25);
  CHECK_THROWS_AS(scalar_traits<R>::parse("1/0"), ParseError);
  CHECK_THROWS_AS(scalar_traits<R>::parse("x"), ParseError);
  CHECK_THROWS_AS(scalar_traits<double>::parse("nan"), InvalidInput);

  // shortest round-trip rendering
  double v = 0.1 + 0.2;
  CHECK(scalar_traits<double>::parse(scalar_traits<double>::to_string(v)) == v);
}

TEST_CASE("tolerance semantics differ per backend") {
  Tolerance tol;
  CHECK(is_zero(R(0), R(100), tol));
  CHECK_FALSE(is_zero(R(1, 1000000000000L), R(100), tol)); // exact: any nonzero fails
  CHECK(is_zero(1e-12, 1.0, tol));
  CHECK_FALSE(is_zero(1e-6, 1.0, tol));
  CHECK(is_zero(1e-3, 1e7, tol)); // scaled
}

TEST_CASE("det3 matches the Leibniz oracle on frozen cases") {
  // identity determinant
  Point3<R> e1{R(1), R(0), R(0)}, e2{R(0), R(1), R(0)}, e3{R(0), R(0), R(1)};
  CHECK(det3(e1, e2, e3) == 1);

  // three lattice points of the harmonic example; oracle value frozen at -3
  Point3<R> r{R(0), R(-1), R(2)}, r1{R(1), R(0), R(0)}, r2{R(1), R(1), R(-5)};
  CHECK(leibniz_det3(r, r1, r2) == -3);
  CHECK(det3(r, r1, r2) == -3);

  // antisymmetry under a swap
  CHECK(det3(e2, e1, e3) == -1);
}

TEST_CASE("det3 is multilinear and alternating") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    auto rv = [&] {
      return Point3<R>{testutil::random_rational(rng, -20, 20, 9),
                       testutil::random_rational(rng, -20, 20, 9),
                       testutil::random_rational(rng, -20, 20, 9)};
    };
    Point3<R> v1 = rv(), v2 = rv(), v3 = rv(), u = rv();
    CHECK(det3(Point3<R>(v1 + u), v2, v3) == det3(v1, v2, v3) + det3(u, v2, v3));
    CHECK(det3(v1, v1, v3) == 0);
    CHECK(det3(v1, v2, v2) == 0);
    CHECK(det3(v1, v2, v3) == -det3(v2, v1, v3));
    CHECK(det3(v1, v2, v3) == leibniz_det3(v1, v2, v3));
  }
}

TEST_CASE("det3 repeated argument on the float backend stays within tolerance") {
  std::mt19937_64 rng(8);
  Tolerance tol;
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int iter = 0; iter < 50; ++iter) {
    Point3<double> v1{dist(rng), dist(rng), dist(rng)};
    Point3<double> v3{dist(rng), dist(rng), dist(rng)};
    double d = det3(v1, v1, v3);
    CHECK(is_zero(d, det3_scale(v1, v1, v3), tol));
  }
}

TEST_CASE("det3 rejects NaN on the float backend") {
  Point3<double> bad{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
  Point3<double> ok{1.0, 0.0, 0.0};
  CHECK_THROWS_AS(det3(bad, ok, ok), InvalidInput);
}

TEST_CASE("lattice window shape and access") {
  CHECK_THROWS_AS(LatticeWindow<R>(0, 0, 0, 3), Error); // no cell in i
  LatticeWindow<R> w(0, 1, 0, 1);
  CHECK_THROWS_AS(w.at(0, 0), MissingStencil); // unpopulated
  w.set(0, 0, {R(1), R(0), R(0)});
  CHECK(w.at(0, 0).x == 1);
  CHECK_THROWS_AS(w.at(5, 5), MissingStencil);
  CHECK_FALSE(w.fully_populated());
}

TEST_CASE("validate_window accepts the harmonic example points") {
  // the nine points around the origin, entered by hand
  LatticeWindow<R> w(-1, 1, -1, 1);
  w.set(0, 0, {R(1), R(0), R(0)});
  w.set(1, 0, {R(0), R(1), R(0)});
  w.set(0, 1, {R(0), R(0), R(1)});
  w.set(-1, 1, {R(1), R(1), R(-5)});
  w.set(0, -1, {R(2), R(-2), R(1)});
  w.set(1, -1, {R(3), R(1), R(1)});
  w.set(-1, 0, {R(0), R(-1), R(2)});
  w.set(-1, -1, {R(-1), R(-1), R(-1)});
  w.set(1, 1, {R(-1, 3), R(1, 3), R(-1, 3)});
  ValidationReport<R> report = validate_window(w);
  CHECK(report.ok());
  CHECK(report.sites_checked == 1);
}

TEST_CASE("validate_window flags a tangent plane through the origin") {
  // all nine points in the plane z = 0, no collinear triples
  LatticeWindow<R> w(-1, 1, -1, 1);
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      w.set(i, j, {R(1 + i), R(1 + j + i * j), R(0)});
  ValidationReport<R> report = validate_window(w);
  REQUIRE_FALSE(report.ok());
  for (const auto& v : report.violations)
    CHECK(v.condition == WindowCondition::origin_in_tangent_plane);
  CHECK(report.violations.front().value == 0);
}

TEST_CASE("validate_window flags collinear triples as condition (c)") {
  LatticeWindow<R> w(-1, 1, -1, 1);
  // r, r1, r2 on one affine line through (1,1,1) + t(1,0,0)
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      w.set(i, j, {R(1 + i + j), R(1), R(1)});
  ValidationReport<R> report = validate_window(w);
  REQUIRE_FALSE(report.ok());
  bool collinear_seen = false;
  for (const auto& v : report.violations)
    if (v.condition == WindowCondition::collinear_triple) collinear_seen = true;
  CHECK(collinear_seen);
}

TEST_CASE("validate_window flags broken coplanarity after a perturbation") {
  auto [set, w] = generate_example<R>(ExampleName::example2);
  Point3<R> p = w.at(1, 1);
  p.z += 1;
  w.set(1, 1, p);
  ValidationReport<R> report = validate_window(w);
  REQUIRE_FALSE(report.ok());
  bool coplanarity = false;
  for (const auto& v : report.violations)
    if (v.condition == WindowCondition::coplanarity_e1 ||
        v.condition == WindowCondition::coplanarity_e2)
      coplanarity = true;
  CHECK(coplanarity);
}

TEST_CASE("synthesized windows from random compatible families validate") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 25; ++iter) {
    CoefficientSet<R> s = testutil::random_family(rng);
    LatticeWindow<R> w = synthesize(s, -2, 2, -2, 2);
    CHECK(validate_window(w).ok());
  }
}

TEST_CASE("exact and float backends agree on the example surfaces") {
  for (ExampleName name : {ExampleName::example1, ExampleName::example2,
                           ExampleName::example3_d0, ExampleName::example3_d1,
                           ExampleName::example3_dm1, ExampleName::convex6}) {
    auto [sr, wr] = generate_example<R>(name);
    auto [sd, wd] = generate_example<double>(name);
    for (int i = wr.imin(); i <= wr.imax(); ++i) {
      for (int j = wr.jmin(); j <= wr.jmax(); ++j) {
        Point3<double> exact{wr.at(i, j).x.get_d(), wr.at(i, j).y.get_d(),
                             wr.at(i, j).z.get_d()};
        Point3<double> diff = exact - wd.at(i, j);
        CHECK(linf(diff) <= 1e-12 * (1.0 + linf(exact)));
      }
    }
  }
}
