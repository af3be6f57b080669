#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ecslab/checks.hpp"
#include "ecslab/linalg.hpp"
#include "ecslab/tensor.hpp"

namespace ecslab {

// Index bookkeeping: coordinates are x^1..x^n externally; internally
// everything is 0-based, so the block indices lambda, mu in 2..n-1 map to
// internal 1..n-2, and G, A are indexed from 0 (G(i,j) = g_{(i+2)(j+2)}).

/// Construction data for the metric family: dimension n >= 4, a
/// polynomial f in x^1 only, and constant symmetric matrices G = [g_lm]
/// (nondegenerate) and A = [a_lm] (nonzero, trace-free against G^{-1}).
struct RoterParams {
  int n = 0;
  MultiPoly f;
  RationalMatrix G;
  RationalMatrix A;

  int block_size() const { return n - 2; }
};

namespace detail {

inline bool is_symmetric(const RationalMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

// Sylvester criterion on G or -G. Only used for a diagnostic note.
inline bool is_definite(const RationalMatrix& g) {
  for (int sign = 0; sign < 2; ++sign) {
    RationalMatrix m = sign ? RationalMatrix(-g) : g;
    bool ok = true;
    for (Eigen::Index k = 1; k <= m.rows() && ok; ++k)
      if (exact_det(m.topLeftCorner(k, k)) <= 0) ok = false;
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

/// Constraint report for a parameter set. Hard failures (Fail entries)
/// make the construction invalid; a constant f is only a warning -- the
/// metric still has parallel Weyl tensor, it just fails the
/// essentially-conformally-symmetric nonconstancy condition.
inline CheckList validate(const RoterParams& p) {
  CheckList r;
  const int m = p.n - 2;

  r.add("dimension n >= 4", p.n >= 4,
        "n = " + std::to_string(p.n));
  if (p.n < 4) return r;

  const bool g_shape = p.G.rows() == m && p.G.cols() == m;
  const bool a_shape = p.A.rows() == m && p.A.cols() == m;
  r.add("G is (n-2)x(n-2)", g_shape);
  r.add("A is (n-2)x(n-2)", a_shape);
  if (!g_shape || !a_shape) return r;

  r.add("G symmetric", detail::is_symmetric(p.G));
  r.add("A symmetric", detail::is_symmetric(p.A));

  const Rational det_g = exact_det(p.G);
  r.add("det G != 0", det_g != 0, "G is singular");

  const bool a_nonzero = !is_zero_matrix(p.A);
  r.add("A != 0", a_nonzero, "A vanishes identically");

  if (det_g != 0 && detail::is_symmetric(p.G) && detail::is_symmetric(p.A)) {
    const RationalMatrix ginv = exact_inverse(p.G);
    const Rational trace = (ginv * p.A).trace();
    std::string note = "g^{lm} a_lm = " + format_rational(trace);
    if (trace != 0 && a_nonzero && exact_rank(p.A) == 1 &&
        detail::is_definite(p.G))
      note += "; a rank-1 symmetric A can only be trace-free against an "
              "indefinite G";
    r.add("trace-free coupling g^{lm} a_lm = 0", trace == 0, note);
  } else {
    r.add("trace-free coupling g^{lm} a_lm = 0", CheckStatus::Skip,
          "prerequisites failed");
  }

  r.add("f depends on x^1 only",
        p.f.nvars() == 0 || p.f.depends_only_on(1),
        "f involves coordinates other than x^1");
  if (p.f.is_constant())
    r.add("f nonconstant", CheckStatus::Warn,
          "f is constant: metric is not essentially conformally symmetric "
          "(locally symmetric instead); tensor checks still apply");
  else
    r.add("f nonconstant", CheckStatus::Pass);

  return r;
}

inline void require_valid(const RoterParams& p) {
  const CheckList v = validate(p);
  if (v.any_fail()) {
    std::string what = "invalid Roter parameters:";
    for (const auto& e : v.entries)
      if (e.status == CheckStatus::Fail)
        what += " [" + e.name + (e.detail.empty() ? "" : ": " + e.detail) + "]";
    throw std::invalid_argument(what);
  }
}

/// g_11 = [f(x^1) g_lm + a_lm] x^l x^m, summed over the block indices.
inline MultiPoly roter_g11(const RoterParams& p) {
  MultiPoly g11(p.n);
  for (int i = 1; i <= p.n - 2; ++i)
    for (int j = 1; j <= p.n - 2; ++j) {
      MultiPoly coeff = p.f * p.G(i - 1, j - 1) +
                        MultiPoly::constant(p.n, p.A(i - 1, j - 1));
      if (coeff.is_zero()) continue;
      g11 += coeff * MultiPoly::variable(p.n, i + 1) *
             MultiPoly::variable(p.n, j + 1);
    }
  return g11;
}

/// The metric field: g_11 as above, g_1n = g_n1 = 1, the constant block
/// G in slots 2..n-1, everything else zero.
inline TensorField build_metric(const RoterParams& p) {
  require_valid(p);
  const int n = p.n;
  TensorField g(n, {Variance::Lower, Variance::Lower});
  g(0, 0) = roter_g11(p);
  g(0, n - 1) = MultiPoly::constant(n, 1);
  g(n - 1, 0) = MultiPoly::constant(n, 1);
  for (int i = 1; i <= n - 2; ++i)
    for (int j = 1; j <= n - 2; ++j)
      g(i, j) = MultiPoly::constant(n, p.G(i - 1, j - 1));
  return g;
}

/// The closed-form essential components, instantiated directly from the
/// parameters with no curvature pipeline involved. Serves as the
/// independent oracle the generic pipeline is checked against.
///
/// Block arrays are indexed 0..n-3 (entry i corresponds to lambda = i+2).
struct ClosedForms {
  MultiPoly g11;
  RationalMatrix ginv_block;               // g^{lm} = G^{-1}
  std::vector<MultiPoly> gamma_block_11;   // Gamma^l_11 = -g^{lm} d_m g11 / 2
  MultiPoly gamma_n_11;                    // Gamma^n_11 = d_1 g11 / 2
  std::vector<MultiPoly> gamma_n_1block;   // Gamma^n_1l = d_l g11 / 2
  std::vector<std::vector<MultiPoly>> riemann_1bb1;  // R_1lm1 = f g_lm + a_lm
  MultiPoly ricci_11;                      // R_11 = (2-n) f
  RationalMatrix weyl_1bb1;                // W_1lm1 = a_lm
};

inline ClosedForms closed_forms(const RoterParams& p) {
  require_valid(p);
  const int n = p.n;
  const int m = n - 2;
  ClosedForms cf;
  cf.g11 = roter_g11(p);
  cf.ginv_block = exact_inverse(p.G);

  const Rational half = rat(1, 2);
  cf.gamma_block_11.resize(m);
  for (int i = 0; i < m; ++i) {
    MultiPoly acc(n);
    for (int j = 0; j < m; ++j)
      if (cf.ginv_block(i, j) != 0)
        acc += cf.ginv_block(i, j) * cf.g11.partial(j + 2);
    cf.gamma_block_11[i] = -(half * acc);
  }
  cf.gamma_n_11 = half * cf.g11.partial(1);
  cf.gamma_n_1block.resize(m);
  for (int i = 0; i < m; ++i)
    cf.gamma_n_1block[i] = half * cf.g11.partial(i + 2);

  cf.riemann_1bb1.assign(m, std::vector<MultiPoly>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      cf.riemann_1bb1[i][j] =
          p.f * p.G(i, j) + MultiPoly::constant(n, p.A(i, j));

  cf.ricci_11 = Rational(2 - n) * p.f;
  cf.weyl_1bb1 = p.A;
  return cf;
}

/// The rank dichotomy: d = 1 when rank A >= 2, d = 2 when rank A = 1.
inline int predicted_rank(const RoterParams& p) {
  if (p.A.size() == 0 || is_zero_matrix(p.A))
    throw std::invalid_argument(
        "predicted_rank: A = 0 is not a valid Roter/ECS datum");
  return exact_rank(p.A) >= 2 ? 1 : 2;
}

}  // namespace ecslab
