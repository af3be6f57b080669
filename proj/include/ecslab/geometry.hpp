#pragma once

#include <stdexcept>
#include <utility>

#include "ecslab/linalg.hpp"
#include "ecslab/tensor.hpp"

namespace ecslab {

// Conventions, fixed once for the whole pipeline:
//   Gamma^k_ij = (1/2) g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
//   R_ijk^l    = d_j Gamma^l_ik - d_i Gamma^l_jk
//                + Gamma^m_ik Gamma^l_jm - Gamma^m_jk Gamma^l_im
//   R_ijkl     = g_lm R_ijk^m
//   Ric_ij     = R_ikj^k = g^{kl} R_ikjl,  s = g^{ij} Ric_ij
// With these signs a metric of constant sectional curvature has
// R_ijij < 0 for orthonormal i,j; what matters here is that Ric is the
// standard one and the lowered tensor satisfies the pair symmetries.

/// Exact polynomial inverse of a metric whose determinant is a nonzero
/// constant. Generic polynomial matrices have non-polynomial inverses,
/// so anything else is refused.
inline TensorField invert_metric(const TensorField& g) {
  const int n = g.n();
  if (g.rank() != 2 || !g.all_lower())
    throw std::invalid_argument("invert_metric: expected rank-2 lower tensor");

  PolyMatrix m(static_cast<std::size_t>(n),
               std::vector<MultiPoly>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = g(i, j);

  const MultiPoly det = poly_det(m);
  if (!det.is_constant() || det.is_zero())
    throw std::invalid_argument(
        "invert_metric: det(g) = " + det.to_string() +
        " is not a nonzero constant; exact polynomial inverse unavailable");
  const Rational inv_det = Rational(1) / det.constant_value();

  TensorField ginv(n, {Variance::Upper, Variance::Upper});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ginv(i, j) = inv_det * poly_cofactor(m, static_cast<std::size_t>(j),
                                           static_cast<std::size_t>(i));
  return ginv;
}

/// Levi-Civita connection coefficients, slot order (k; i, j).
inline TensorField christoffel(const TensorField& g, const TensorField& ginv) {
  const int n = g.n();
  TensorField gamma(n, {Variance::Upper, Variance::Lower, Variance::Lower});
  const Rational half = rat(1, 2);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        MultiPoly acc(n);
        for (int l = 0; l < n; ++l) {
          if (ginv(k, l).is_zero()) continue;
          acc += ginv(k, l) * (g(j, l).partial(i + 1) + g(i, l).partial(j + 1) -
                               g(i, j).partial(l + 1));
        }
        gamma(k, i, j) = half * acc;
        gamma(k, j, i) = gamma(k, i, j);
      }
  return gamma;
}

/// Curvature: (R_ijk^l with the contravariant slot last, R_ijkl lowered
/// through g).
inline std::pair<TensorField, TensorField> riemann(const TensorField& g,
                                                   const TensorField& gamma) {
  const int n = g.n();
  TensorField up(n, {Variance::Lower, Variance::Lower, Variance::Lower,
                     Variance::Upper});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          MultiPoly acc =
              gamma(l, i, k).partial(j + 1) - gamma(l, j, k).partial(i + 1);
          for (int m = 0; m < n; ++m) {
            if (!gamma(m, i, k).is_zero() && !gamma(l, j, m).is_zero())
              acc += gamma(m, i, k) * gamma(l, j, m);
            if (!gamma(m, j, k).is_zero() && !gamma(l, i, m).is_zero())
              acc -= gamma(m, j, k) * gamma(l, i, m);
          }
          up(i, j, k, l) = acc;
          up(j, i, k, l) = -acc;
        }

  TensorField low(n, {Variance::Lower, Variance::Lower, Variance::Lower,
                      Variance::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          MultiPoly acc(n);
          for (int m = 0; m < n; ++m)
            if (!g(l, m).is_zero() && !up(i, j, k, m).is_zero())
              acc += g(l, m) * up(i, j, k, m);
          low(i, j, k, l) = acc;
        }
  return {up, low};
}

inline std::pair<TensorField, MultiPoly> ricci_and_scalar(
    const TensorField& riemann_low, const TensorField& ginv) {
  const int n = riemann_low.n();
  TensorField ric(n, {Variance::Lower, Variance::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      MultiPoly acc(n);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (!ginv(k, l).is_zero() && !riemann_low(i, k, j, l).is_zero())
            acc += ginv(k, l) * riemann_low(i, k, j, l);
      ric(i, j) = acc;
      ric(j, i) = acc;
    }
  MultiPoly s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!ginv(i, j).is_zero() && !ric(i, j).is_zero())
        s += ginv(i, j) * ric(i, j);
  return {ric, s};
}

/// Weyl tensor from the conformal decomposition
///   W = R - Schouten (Kulkarni-Nomizu) g,
/// Schouten P = (Ric - s g / (2(n-1))) / (n-2). Totally trace-free with
/// the Ricci contraction above.
inline TensorField weyl(const TensorField& g, const TensorField& riemann_low,
                        const TensorField& ric, const MultiPoly& s) {
  const int n = g.n();
  if (n < 4)
    throw std::invalid_argument("weyl: decomposition degenerate for n < 4");

  TensorField schouten(n, {Variance::Lower, Variance::Lower});
  const Rational c1 = Rational(1) / Rational(n - 2);
  const Rational c2 = Rational(1) / Rational(2 * (n - 1) * (n - 2));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      schouten(i, j) = c1 * ric(i, j) - c2 * (s * g(i, j));

  TensorField w(n, {Variance::Lower, Variance::Lower, Variance::Lower,
                    Variance::Lower});
  const auto& p = schouten;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          MultiPoly kn = p(i, k) * g(j, l) + p(j, l) * g(i, k) -
                         p(i, l) * g(j, k) - p(j, k) * g(i, l);
          w(i, j, k, l) = riemann_low(i, j, k, l) - kn;
        }
  return w;
}

/// Covariant derivative of an all-lower tensor; the derivative index is
/// appended as the last slot: (nabla T)_{i1..ik;m}.
inline TensorField covariant_derivative(const TensorField& t,
                                        const TensorField& gamma) {
  if (!t.all_lower())
    throw std::invalid_argument(
        "covariant_derivative: mixed-variance input unsupported; lower all "
        "indices first");
  const int n = t.n();
  const int r = t.rank();
  std::vector<Variance> var(static_cast<std::size_t>(r + 1), Variance::Lower);
  TensorField out(n, var);

  t.for_each_index([&](std::span<const int> idx, std::size_t flat) {
    std::vector<int> oidx(idx.begin(), idx.end());
    oidx.push_back(0);
    std::vector<int> tmp(idx.begin(), idx.end());
    for (int m = 0; m < n; ++m) {
      oidx.back() = m;
      MultiPoly acc = t.components()[flat].partial(m + 1);
      for (int slot = 0; slot < r; ++slot) {
        const int orig = idx[static_cast<std::size_t>(slot)];
        for (int l = 0; l < n; ++l) {
          if (gamma(l, m, orig).is_zero()) continue;
          tmp[static_cast<std::size_t>(slot)] = l;
          const MultiPoly& tl = t.components()[t.flat_index(tmp)];
          if (!tl.is_zero()) acc -= gamma(l, m, orig) * tl;
        }
        tmp[static_cast<std::size_t>(slot)] = orig;
      }
      out.components()[out.flat_index(oidx)] = std::move(acc);
    }
  });
  return out;
}

}  // namespace ecslab
