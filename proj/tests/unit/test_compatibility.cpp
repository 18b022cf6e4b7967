#include <doctest.h>

#include "test_helpers.hpp"

using namespace calat;
using R = Rational;

namespace {

/// Direct substitution of the six compatibility conditions for a constant
/// set, written out independently of the library's residual evaluator.
bool oracle_constant_compatible(const CoefficientSet<R>& s) {
  R d = s.a - s.b - s.c;
  // alpha = (1-a) d / ((a-1) b) = -d/b, gamma = -d/c
  if (s.alpha != -d / s.b) return false;
  if (s.gamma != -d / s.c) return false;
  // c/b = c d / (b d)
  if (s.c / s.b != (s.c * d) / (s.b * d)) return false;
  // K reduces to beta*delta for constants; the fourth condition becomes
  // (1-a)/b = (a-1) c (1 - beta delta) / d
  R K = (s.a - 1) * s.b * s.beta * (s.c * s.delta * (s.a - 1)) /
        (s.b * s.c * (s.a - 1) * (s.a - 1));
  if ((R(1) - s.a) / s.b != (s.a - 1) * (s.a - 1) * s.c * (1 - K) / ((s.a - 1) * d))
    return false;
  // the beta and delta conditions are symmetric identities for constants
  R lhs_b = (s.a - 1) * s.b * s.beta + (s.a - 1) * (s.a - s.c);
  R rhs_b = (s.a - 1) * s.b * s.beta + (s.a - 1) * (s.a - s.c);
  return lhs_b == rhs_b;
}

CoefficientField<R> constant_field(const CoefficientSet<R>& s, int n = 2) {
  return CoefficientField<R>::constant(s, 0, n, 0, n);
}

} // namespace

TEST_CASE("scalar residuals vanish on the example families") {
  for (ExampleName name : {ExampleName::example1, ExampleName::example2,
                           ExampleName::example3_d0, ExampleName::example3_d1,
                           ExampleName::example3_dm1, ExampleName::convex6}) {
    CoefficientSet<R> s = example_coefficients<R>(name);
    CHECK(oracle_constant_compatible(s));
    CoefficientField<R> f = constant_field(s);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CompatResiduals<R> r = scalar_residuals(f, i, j);
        CHECK(r.max_abs() == 0);
      }
    }
  }
}

TEST_CASE("K reduces to beta*delta on constant fields") {
  CoefficientField<R> f = constant_field(example_coefficients<R>(ExampleName::example2));
  CompatResiduals<R> r = scalar_residuals(f, 0, 0);
  CHECK(r.k_value == 4); // beta = delta = 2
}

TEST_CASE("a perturbed coefficient breaks the alpha condition") {
  CoefficientSet<R> s = example_coefficients<R>(ExampleName::example1);
  CoefficientField<R> f = constant_field(s, 3);
  f.at(1, 1).a = R(85, 100);
  bool nonzero_somewhere = false;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      if (scalar_residuals(f, i, j).r_alpha != 0) nonzero_somewhere = true;
  CHECK(nonzero_somewhere);
}

TEST_CASE("scalar residual denominators are named") {
  CoefficientSet<R> s = example_coefficients<R>(ExampleName::example1);
  CoefficientField<R> f = constant_field(s);
  f.at(1, 0).b = 0; // b_1 of site (0,0)
  try {
    scalar_residuals(f, 0, 0);
    FAIL("expected ZeroDenominator");
  } catch (const ZeroDenominator& e) {
    CHECK(std::string(e.what()).find("b_1") != std::string::npos);
  }
}

TEST_CASE("matrix residual vanishes iff the scalar residuals do") {
  SUBCASE("examples commute") {
    for (ExampleName name : {ExampleName::example2, ExampleName::example3_d0}) {
      CoefficientField<R> f = constant_field(example_coefficients<R>(name));
      CHECK(matrix_residual(f, 0, 0) == 0);
      // independent oracle: naive product of the two orderings
      TransitionPair<R> tp = transition_matrices(f.at(0, 0));
      Matrix3<R> ab = testutil::naive_product(tp.A, tp.B);
      Matrix3<R> ba = testutil::naive_product(tp.B, tp.A);
      CHECK((ab == ba));
    }
  }
  SUBCASE("random families and their perturbations") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 30; ++iter) {
      CoefficientSet<R> s = testutil::random_family(rng);
      CoefficientField<R> f = constant_field(s, 3);
      bool scalar_zero = true, matrix_zero = true;
      for (int i = 0; i <= 2; ++i) {
        for (int j = 0; j <= 2; ++j) {
          if (scalar_residuals(f, i, j).max_abs() != 0) scalar_zero = false;
          if (matrix_residual(f, i, j) != 0) matrix_zero = false;
        }
      }
      CHECK(scalar_zero);
      CHECK(matrix_zero);

      CoefficientField<R> g = f;
      g.at(1, 1).c += R(1, 7);
      scalar_zero = matrix_zero = true;
      for (int i = 0; i <= 2; ++i) {
        for (int j = 0; j <= 2; ++j) {
          if (scalar_residuals(g, i, j).max_abs() != 0) scalar_zero = false;
          if (matrix_residual(g, i, j) != 0) matrix_zero = false;
        }
      }
      CHECK_FALSE(scalar_zero);
      CHECK_FALSE(matrix_zero);
    }
  }
  SUBCASE("non-constant compatible field") {
    CoefficientField<R> f = testutil::tzitzeica_field(testutil::tzitzeica_grid(4));
    for (int i = f.imin(); i < f.imax(); ++i) {
      for (int j = f.jmin(); j < f.jmax(); ++j) {
        CHECK(scalar_residuals(f, i, j).max_abs() == 0);
        CHECK(matrix_residual(f, i, j) == 0);
      }
    }
  }
}

TEST_CASE("constant_family reproduces the built-in examples") {
  CoefficientSet<R> e1 = constant_family(R(1, 2), R(1, 2), R(0), R(0));
  CHECK(e1 == example_coefficients<R>(ExampleName::example1));

  CoefficientSet<R> e2 = constant_family(R(1, 3), R(-1, 3), R(2), R(2));
  CHECK(e2 == example_coefficients<R>(ExampleName::example2));

  CoefficientSet<R> e3 = constant_family(R(-1), R(-1), R(0), R(0));
  CHECK(e3 == example_coefficients<R>(ExampleName::example3_d0));
}

TEST_CASE("constant_family output satisfies all four equalities") {
  std::mt19937_64 rng(32);
  for (int iter = 0; iter < 50; ++iter) {
    CoefficientSet<R> s = testutil::random_family(rng);
    R d = s.d();
    CHECK(-s.alpha * s.b == d);
    CHECK(-s.gamma * s.c == d);
    CHECK(s.b * s.c * (s.beta * s.delta - 1) == d);
    CHECK(oracle_constant_compatible(s));
  }
}

TEST_CASE("constant_family rejects degenerate input") {
  CHECK_THROWS_AS(constant_family(R(0), R(1), R(0), R(0)), AssumptionViolated);
  CHECK_THROWS_AS(constant_family(R(1), R(1), R(1, 2), R(2)), AssumptionViolated);
  // b + c + bc(beta delta - 1) = 1 with b = c = 1, beta = delta = 0 gives a = 1
  CHECK_THROWS_AS(constant_family(R(1), R(1), R(0), R(0)), AssumptionViolated);
}

TEST_CASE("affine sphere predicate") {
  CHECK(is_affine_sphere(example_coefficients<R>(ExampleName::example3_d0)));
  CHECK(is_affine_sphere(example_coefficients<R>(ExampleName::example3_d1)));
  CHECK_FALSE(is_affine_sphere(example_coefficients<R>(ExampleName::example1)));
  CHECK_FALSE(is_affine_sphere(example_coefficients<R>(ExampleName::example2)));
}

TEST_CASE("affine sphere iff det A = det B = 1 for constant families") {
  std::mt19937_64 rng(33);
  int spheres_seen = 0;
  for (int iter = 0; iter < 60; ++iter) {
    CoefficientSet<R> s = testutil::random_family(rng);
    bool sphere = is_affine_sphere(s);
    bool unit_dets = (s.c * s.alpha == 1) && (s.b * s.gamma == 1);
    CHECK(sphere == unit_dets);
    if (sphere) ++spheres_seen;
  }
  // genuine affine-sphere members of the family: b = c, delta = (1 - 1/b^2)/beta
  // (k = 3 would give b = 1 and hence a = 1, which the constructor rejects)
  for (int k : {2, 4, 5, 6, 7}) {
    R b(k, 3);
    b.canonicalize();
    R beta(1, k);
    R delta = (1 - 1 / (b * b)) / beta;
    CoefficientSet<R> s = constant_family(b, b, beta, delta);
    CHECK(is_affine_sphere(s));
    CHECK(s.c * s.alpha == 1);
    CHECK(s.b * s.gamma == 1);
    ++spheres_seen;
  }
  CHECK(spheres_seen >= 5);
}

TEST_CASE("tzitzeica conversion lands in the affine-sphere subfamily") {
  std::mt19937_64 rng(34);
  for (int iter = 0; iter < 30; ++iter) {
    TzitzeicaData<R> t(0, 1, 0, 1);
    for (int i = 0; i <= 1; ++i) {
      for (int j = 0; j <= 1; ++j) {
        R h;
        do {
          h = testutil::random_rational(rng, -30, 30, 7);
        } while (h == 0 || h == 1);
        t.at(i, j) = {h, testutil::random_rational(rng, -10, 10, 5),
                      testutil::random_rational(rng, -10, 10, 5)};
      }
    }
    CoefficientSet<R> s = tzitzeica_to_centroaffine(t, 0, 0);
    CHECK(s.b == s.c);
    CHECK(s.d() == -1);
    CHECK(is_affine_sphere(s));
  }
}

TEST_CASE("tzitzeica conversion with constant H and A = B = 0") {
  TzitzeicaData<R> t(0, 1, 0, 1);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) t.at(i, j) = {R(-4), R(0), R(0)};
  CoefficientSet<R> s = tzitzeica_to_centroaffine(t, 0, 0);
  CHECK(s.beta == 0);
  CHECK(s.delta == 0);
  CHECK(s.alpha == R(-1, 4)); // (H-1)/(H(H-1)) = 1/H
  CHECK(s.gamma == R(-1, 4));
  CHECK(is_affine_sphere(s));
}

TEST_CASE("tzitzeica conversion rejects H in {0,1}") {
  TzitzeicaData<R> t(0, 1, 0, 1);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) t.at(i, j) = {R(2), R(0), R(0)};
  t.at(1, 0).H = 1;
  CHECK_THROWS_AS(tzitzeica_to_centroaffine(t, 0, 0), ZeroDenominator);
}

TEST_CASE("tzitzeica residuals: constant H with A = B = 0") {
  // oracle: H_12 reduces to H(H-1)/(H^2(2H - H^2) - H); the residual vanishes
  // exactly when the constant H satisfies it, which happens at H = -1
  auto oracle_rh = [](const R& h) -> R {
    return R(h - h * (h - 1) / (h * h * (2 * h - h * h) - h));
  };
  for (long hn : {-1L, 2L, -3L}) {
    R h(hn);
    TzitzeicaData<R> t(0, 1, 0, 1);
    for (int i = 0; i <= 1; ++i)
      for (int j = 0; j <= 1; ++j) t.at(i, j) = {h, R(0), R(0)};
    TzitzeicaResiduals<R> r = tzitzeica_residuals(t, 0, 0);
    CHECK(r.rA == 0);
    CHECK(r.rB == 0);
    CHECK(r.rH == oracle_rh(h));
    if (hn == -1)
      CHECK(r.rH == 0);
    else
      CHECK(r.rH != 0);
  }
}

TEST_CASE("tzitzeica residuals: broken A recursion is flagged") {
  TzitzeicaData<R> t(0, 1, 0, 1);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) t.at(i, j) = {R(-1), R(1), R(0)};
  t.at(0, 1).A = R(5); // should equal (H_1/H) A = 1
  TzitzeicaResiduals<R> r = tzitzeica_residuals(t, 0, 0);
  CHECK(r.rA != 0);
}

TEST_CASE("recursion-built tzitzeica grids have zero residuals") {
  TzitzeicaData<R> t = testutil::tzitzeica_grid(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      TzitzeicaResiduals<R> r = tzitzeica_residuals(t, i, j);
      CHECK(r.rA == 0);
      CHECK(r.rB == 0);
      CHECK(r.rH == 0);
    }
  }
}
