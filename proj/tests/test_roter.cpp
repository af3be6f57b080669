#include <doctest.h>

#include <random>

#include "cases.hpp"
#include "ecslab/geometry.hpp"
#include "ecslab/roter.hpp"

using namespace ecslab;

TEST_CASE("validate: case R1 passes with trace 1 + 0 - 1 = 0") {
  const CheckList r = validate(testcases::r1());
  CHECK_FALSE(r.any_fail());
  CHECK_FALSE(r.any_warn());  // f = x^1 nonconstant
}

TEST_CASE("validate: trace-free violation") {
  RoterParams p = testcases::r2();
  p.A = RationalMatrix(3, 3);
  p.A.setConstant(Rational(0));
  for (int i = 0; i < 3; ++i) p.A(i, i) = 1;  // g^{lm} a_lm = 3
  const CheckList r = validate(p);
  CHECK(r.any_fail());
  bool trace_failed = false;
  for (const auto& e : r.entries)
    if (e.name.find("trace-free") != std::string::npos &&
        e.status == CheckStatus::Fail)
      trace_failed = true;
  CHECK(trace_failed);
}

TEST_CASE("validate: A = 0 rejected") {
  RoterParams p = testcases::r1();
  p.A.setConstant(Rational(0));
  const CheckList r = validate(p);
  bool a_failed = false;
  for (const auto& e : r.entries)
    if (e.name == "A != 0" && e.status == CheckStatus::Fail) a_failed = true;
  CHECK(a_failed);
  CHECK_THROWS_AS(build_metric(p), std::invalid_argument);
  CHECK_THROWS_AS(predicted_rank(p), std::invalid_argument);
}

TEST_CASE("validate: constant f warns but does not fail") {
  RoterParams p = testcases::r1();
  p.f = MultiPoly::constant(5, 1);
  const CheckList r = validate(p);
  CHECK_FALSE(r.any_fail());
  CHECK(r.any_warn());
}

TEST_CASE("validate: n < 4 and shape mismatches are hard failures") {
  RoterParams p = testcases::r1();
  p.n = 3;
  CHECK(validate(p).any_fail());

  p = testcases::r1();
  p.G = RationalMatrix(2, 2);
  p.G << 1, 0, 0, 1;
  CHECK(validate(p).any_fail());

  p = testcases::r1();
  p.G(0, 1) = 5;  // breaks symmetry
  CHECK(validate(p).any_fail());

  p = testcases::r1();
  p.f = p.f + MultiPoly::variable(5, 2);  // f must depend on x^1 only
  CHECK(validate(p).any_fail());
}

TEST_CASE("build_metric: case R1 g11") {
  TensorField g = build_metric(testcases::r1());
  MultiPoly x1 = MultiPoly::variable(5, 1), x2 = MultiPoly::variable(5, 2),
            x3 = MultiPoly::variable(5, 3), x4 = MultiPoly::variable(5, 4);
  MultiPoly expect =
      x1 * (x2 * x2 + x3 * x3 - x4 * x4) + (x2 + x4) * (x2 + x4);
  CHECK(g(0, 0) == expect);
  CHECK(g(0, 4) == MultiPoly::constant(5, 1));
  CHECK(g(1, 4).is_zero());  // g_25 = 0
  CHECK(g(4, 4).is_zero());
}

TEST_CASE("build_metric: case R3 g11") {
  TensorField g = build_metric(testcases::r3());
  MultiPoly x1 = MultiPoly::variable(4, 1), x2 = MultiPoly::variable(4, 2),
            x3 = MultiPoly::variable(4, 3);
  MultiPoly expect =
      x1 * x1 * (x2 * x2 - x3 * x3) + rat(2) * x2 * x3;
  CHECK(g(0, 0) == expect);
}

TEST_CASE("closed_forms: anchored formulas") {
  const ClosedForms cf1 = closed_forms(testcases::r1());
  CHECK(cf1.ricci_11 == rat(-3) * MultiPoly::variable(5, 1));  // (2-n) f
  CHECK(cf1.weyl_1bb1(0, 2) == 1);                             // W_1241 = a_24

  // case R2: Gamma^n_12 = d_2 g11 / 2 = (x^1 + 1) x^2
  const ClosedForms cf2 = closed_forms(testcases::r2());
  MultiPoly expect = (MultiPoly::variable(5, 1) + MultiPoly::constant(5, 1)) *
                     MultiPoly::variable(5, 2);
  CHECK(cf2.gamma_n_1block[0] == expect);
}

TEST_CASE("predicted_rank dichotomy on the reference cases") {
  CHECK(predicted_rank(testcases::r1()) == 2);  // rank A = 1
  CHECK(predicted_rank(testcases::r2()) == 1);  // rank A = 3
  CHECK(predicted_rank(testcases::r3()) == 1);  // rank A = 2
}

TEST_CASE("det(full metric) = -det G for all cases") {
  for (const RoterParams& p :
       {testcases::r1(), testcases::r2(), testcases::r3()}) {
    TensorField g = build_metric(p);
    const int n = p.n;
    PolyMatrix gm(static_cast<std::size_t>(n),
                  std::vector<MultiPoly>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gm[i][j] = g(i, j);
    const MultiPoly det = poly_det(gm);
    CHECK(det.is_constant());
    CHECK(det.constant_value() == -exact_det(p.G));
  }
  // case R3 specifically: -det diag(1,-1) = +1
  TensorField g = build_metric(testcases::r3());
  PolyMatrix gm(4, std::vector<MultiPoly>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gm[i][j] = g(i, j);
  CHECK(poly_det(gm).constant_value() == 1);
}

TEST_CASE("pipeline reproduces every closed form") {
  std::mt19937 rng(424242);
  std::vector<RoterParams> params = {testcases::r1(), testcases::r2(),
                                     testcases::r3()};
  params.push_back(testcases::rand_params_rank1(rng, 5));
  params.push_back(testcases::rand_params_rank_ge2(rng, 4));
  params.push_back(testcases::rand_params_rank_ge2(rng, 6));

  for (const RoterParams& p : params) {
    const int n = p.n;
    const int m = n - 2;
    const ClosedForms cf = closed_forms(p);
    TensorField g = build_metric(p);
    TensorField ginv = invert_metric(g);
    TensorField gamma = christoffel(g, ginv);
    auto [up, low] = riemann(g, gamma);
    auto [ric, s] = ricci_and_scalar(low, ginv);
    TensorField w = weyl(g, low, ric, s);

    CHECK(ginv(0, n - 1) == MultiPoly::constant(n, 1));
    CHECK(ginv(n - 1, n - 1) == -cf.g11);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        CHECK(ginv(i + 1, j + 1) ==
              MultiPoly::constant(n, cf.ginv_block(i, j)));

    for (int l = 0; l < m; ++l) {
      CHECK(gamma(l + 1, 0, 0) == cf.gamma_block_11[l]);
      CHECK(gamma(n - 1, 0, l + 1) == cf.gamma_n_1block[l]);
    }
    CHECK(gamma(n - 1, 0, 0) == cf.gamma_n_11);

    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        CHECK(low(0, i + 1, j + 1, 0) == cf.riemann_1bb1[i][j]);
        CHECK(w(0, i + 1, j + 1, 0) ==
              MultiPoly::constant(n, cf.weyl_1bb1(i, j)));
      }
    CHECK(ric(0, 0) == cf.ricci_11);
    CHECK(s.is_zero());
  }
}
