#include <doctest.h>

#include <vector>

#include "cases.hpp"
#include "ecslab/geometry.hpp"
#include "ecslab/roter.hpp"

using namespace ecslab;

namespace {

TensorField constant_metric(int n, const std::vector<int>& diag) {
  TensorField g(n, {Variance::Lower, Variance::Lower});
  for (int i = 0; i < n; ++i)
    g(i, i) = MultiPoly::constant(n, Rational(diag[static_cast<std::size_t>(i)]));
  return g;
}

}  // namespace

TEST_CASE("invert_metric: constant involutive metric") {
  TensorField g = constant_metric(3, {1, 1, -1});
  TensorField ginv = invert_metric(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(ginv(i, j) == g(i, j));
}

TEST_CASE("invert_metric: case R1 closed-form inverse") {
  const RoterParams p = testcases::r1();
  TensorField g = build_metric(p);
  TensorField ginv = invert_metric(g);
  const MultiPoly g11 = roter_g11(p);

  CHECK(ginv(0, 4) == MultiPoly::constant(5, 1));
  CHECK(ginv(4, 0) == MultiPoly::constant(5, 1));
  CHECK(ginv(4, 4) == -g11);
  CHECK(ginv(0, 0).is_zero());
  for (int i = 1; i <= 3; ++i) {
    CHECK(ginv(0, i).is_zero());
    CHECK(ginv(4, i).is_zero());
  }
  // block is G^{-1} = diag(1,1,-1)
  CHECK(ginv(1, 1) == MultiPoly::constant(5, 1));
  CHECK(ginv(2, 2) == MultiPoly::constant(5, 1));
  CHECK(ginv(3, 3) == MultiPoly::constant(5, -1));
  CHECK(ginv(1, 2).is_zero());
}

TEST_CASE("invert_metric: g * ginv = I for case R2") {
  const RoterParams p = testcases::r2();
  TensorField g = build_metric(p);
  TensorField ginv = invert_metric(g);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      MultiPoly acc(5);
      for (int k = 0; k < 5; ++k) acc += g(i, k) * ginv(k, j);
      CHECK(acc == (i == j ? MultiPoly::constant(5, 1) : MultiPoly(5)));
    }
}

TEST_CASE("invert_metric refuses non-constant determinant") {
  TensorField g(2, {Variance::Lower, Variance::Lower});
  g(0, 0) = MultiPoly::variable(2, 1);
  g(1, 1) = MultiPoly::constant(2, 1);
  CHECK_THROWS_AS(invert_metric(g), std::invalid_argument);
}

TEST_CASE("christoffel: constant metric is flat") {
  TensorField g = constant_metric(4, {1, 1, 1, -1});
  TensorField gamma = christoffel(g, invert_metric(g));
  CHECK(gamma.is_zero());
  auto [up, low] = riemann(g, gamma);
  CHECK(low.is_zero());
}

TEST_CASE("christoffel: case R1 frozen values at (1,1,0,0,0)") {
  const RoterParams p = testcases::r1();
  TensorField g = build_metric(p);
  TensorField gamma = christoffel(g, invert_metric(g));
  const Point pt{{1, 1, 0, 0, 0}};
  // Gamma^2_11 = -d_2 g11 / 2 = -2, Gamma^5_11 = d_1 g11 / 2 = 1/2
  CHECK(gamma(1, 0, 0).eval(pt.coords) == -2);
  CHECK(gamma(4, 0, 0).eval(pt.coords) == rat(1, 2));
  // symmetry in the lower pair
  for (int k = 0; k < 5; ++k)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) CHECK(gamma(k, i, j) == gamma(k, j, i));
}

TEST_CASE("riemann: anchored components") {
  SUBCASE("case R1 at (1,1,0,0,0): R_1221 = f(1) + a_22 = 2") {
    const RoterParams p = testcases::r1();
    TensorField g = build_metric(p);
    auto [up, low] = riemann(g, christoffel(g, invert_metric(g)));
    const Point pt{{1, 1, 0, 0, 0}};
    CHECK(low(0, 1, 1, 0).eval(pt.coords) == 2);
  }
  SUBCASE("case R2 at (0,0,1,0,0): R_1331 = f(0) + a_33 = 1") {
    const RoterParams p = testcases::r2();
    TensorField g = build_metric(p);
    auto [up, low] = riemann(g, christoffel(g, invert_metric(g)));
    const Point pt{{0, 0, 1, 0, 0}};
    CHECK(low(0, 2, 2, 0).eval(pt.coords) == 1);
  }
}

TEST_CASE("riemann symmetries and Bianchi identities hold for all cases") {
  for (const RoterParams& p :
       {testcases::r1(), testcases::r2(), testcases::r3()}) {
    const int n = p.n;
    TensorField g = build_metric(p);
    TensorField ginv = invert_metric(g);
    TensorField gamma = christoffel(g, ginv);
    auto [up, low] = riemann(g, gamma);

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            CHECK(low(i, j, k, l) == -low(j, i, k, l));
            CHECK(low(i, j, k, l) == -low(i, j, l, k));
            CHECK(low(i, j, k, l) == low(k, l, i, j));
            CHECK((low(i, j, k, l) + low(j, k, i, l) + low(k, i, j, l))
                      .is_zero());
          }

    const TensorField dr = covariant_derivative(low, gamma);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m)
              CHECK((dr(i, j, k, l, m) + dr(m, i, k, l, j) +
                     dr(j, m, k, l, i))
                        .is_zero());
  }
}

TEST_CASE("ricci and scalar: case R1") {
  const RoterParams p = testcases::r1();
  TensorField g = build_metric(p);
  TensorField ginv = invert_metric(g);
  auto [up, low] = riemann(g, christoffel(g, ginv));
  auto [ric, s] = ricci_and_scalar(low, ginv);

  // R_11 = (2-n) f = -3 x^1
  CHECK(ric(0, 0) == rat(-3) * MultiPoly::variable(5, 1));
  const Point pt{{2, 0, 0, 0, 0}};
  CHECK(ric(0, 0).eval(pt.coords) == -6);
  CHECK(s.is_zero());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(ric(i, j) == ric(j, i));
}

TEST_CASE("weyl: conformally flat constant metric vanishes") {
  TensorField g = constant_metric(4, {1, 1, 1, -1});
  TensorField ginv = invert_metric(g);
  TensorField gamma = christoffel(g, ginv);
  auto [up, low] = riemann(g, gamma);
  auto [ric, s] = ricci_and_scalar(low, ginv);
  CHECK(weyl(g, low, ric, s).is_zero());
}

TEST_CASE("weyl: anchored constant components") {
  {
    const RoterParams p = testcases::r1();
    TensorField g = build_metric(p);
    TensorField ginv = invert_metric(g);
    auto [up, low] = riemann(g, christoffel(g, ginv));
    auto [ric, s] = ricci_and_scalar(low, ginv);
    TensorField w = weyl(g, low, ric, s);
    CHECK(w(0, 1, 1, 0) == MultiPoly::constant(5, 1));   // W_1221 = a_22
    CHECK(w(0, 1, 3, 0) == MultiPoly::constant(5, 1));   // W_1241 = a_24
    CHECK(w(0, 2, 2, 0).is_zero());                      // W_1331 = a_33 = 0

    // trace-freeness g^{ik} W_ijkl = 0
    for (int j = 0; j < 5; ++j)
      for (int l = 0; l < 5; ++l) {
        MultiPoly acc(5);
        for (int i = 0; i < 5; ++i)
          for (int k = 0; k < 5; ++k) acc += ginv(i, k) * w(i, j, k, l);
        CHECK(acc.is_zero());
      }
  }
  {
    const RoterParams p = testcases::r2();
    TensorField g = build_metric(p);
    TensorField ginv = invert_metric(g);
    auto [up, low] = riemann(g, christoffel(g, ginv));
    auto [ric, s] = ricci_and_scalar(low, ginv);
    TensorField w = weyl(g, low, ric, s);
    CHECK(w(0, 3, 3, 0) == MultiPoly::constant(5, -2));  // W_1441 = a_44
  }
}

TEST_CASE("weyl refuses n < 4") {
  TensorField g = constant_metric(3, {1, 1, 1});
  TensorField ginv = invert_metric(g);
  auto [up, low] = riemann(g, christoffel(g, ginv));
  auto [ric, s] = ricci_and_scalar(low, ginv);
  CHECK_THROWS_AS(weyl(g, low, ric, s), std::invalid_argument);
}

TEST_CASE("covariant derivative: nabla g = 0, nabla W = 0, nabla Ric != 0") {
  for (const RoterParams& p :
       {testcases::r1(), testcases::r2(), testcases::r3()}) {
    TensorField g = build_metric(p);
    TensorField ginv = invert_metric(g);
    TensorField gamma = christoffel(g, ginv);
    auto [up, low] = riemann(g, gamma);
    auto [ric, s] = ricci_and_scalar(low, ginv);
    TensorField w = weyl(g, low, ric, s);

    CHECK(covariant_derivative(g, gamma).is_zero());
    CHECK(covariant_derivative(w, gamma).is_zero());
  }

  // (nabla Ric)_{11;1} = (2-n) f' = -3 for case R1
  const RoterParams p = testcases::r1();
  TensorField g = build_metric(p);
  TensorField ginv = invert_metric(g);
  TensorField gamma = christoffel(g, ginv);
  auto [up, low] = riemann(g, gamma);
  auto [ric, s] = ricci_and_scalar(low, ginv);
  const TensorField dric = covariant_derivative(ric, gamma);
  CHECK(dric(0, 0, 0) == MultiPoly::constant(5, -3));
  CHECK_FALSE(dric.is_zero());
}

TEST_CASE("covariant derivative refuses mixed variance") {
  const RoterParams p = testcases::r3();
  TensorField g = build_metric(p);
  TensorField ginv = invert_metric(g);
  TensorField gamma = christoffel(g, ginv);
  CHECK_THROWS_AS(covariant_derivative(ginv, gamma), std::invalid_argument);
}

TEST_CASE("evaluate_at") {
  const RoterParams p = testcases::r1();
  TensorField g = build_metric(p);
  const Point pt{{0, 1, 0, 0, 0}};
  const auto vals = evaluate_at(g, pt);
  CHECK(vals[0] == 1);  // g_11 at (0,1,0,0,0) = (x2+x4)^2 = 1

  TensorField zero(3, {Variance::Lower});
  for (const auto& v : evaluate_at(zero, Point{{1, 2, 3}})) CHECK(v == 0);

  // W of case R1 is constant: identical values at distinct points
  TensorField ginv = invert_metric(g);
  auto [up, low] = riemann(g, christoffel(g, ginv));
  auto [ric, s] = ricci_and_scalar(low, ginv);
  TensorField w = weyl(g, low, ric, s);
  const auto w1 = evaluate_at(w, Point{{0, 1, 0, 0, 0}});
  const auto w2 = evaluate_at(w, Point{{3, -2, 1, rat(1, 2), 5}});
  CHECK(w1 == w2);

  CHECK_THROWS_AS(evaluate_at(g, Point{{1, 2}}), std::invalid_argument);
}
