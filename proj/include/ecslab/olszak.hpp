#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecslab/checks.hpp"
#include "ecslab/linalg.hpp"
#include "ecslab/tensor.hpp"

namespace ecslab {

// The rank invariant d at a point: d = dim of the space of covectors xi
// with W(v,v',.,.) ^ xi = 0 for every v, v'. By bilinearity it is enough
// to run over the coordinate basis pairs, which turns the condition into
// a finite exact linear system in xi_1..xi_n.

/// Linear conditions on xi from (zeta ^ xi)_abc = 0, where
/// zeta^(ij) = W(d_i, d_j, ., .), over all pairs i<j and triples a<b<c.
struct WedgeSystem {
  int n = 0;
  RationalMatrix rows;  // one condition per row, n columns
};

/// w: the n^4 component values of W at the point, row-major.
inline WedgeSystem assemble_wedge_system(const std::vector<Rational>& w, int n,
                                         bool dedup = true) {
  const auto wv = [&](int i, int j, int k, int l) -> const Rational& {
    return w[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  };

  std::vector<RationalVector> rows;
  std::set<std::vector<Rational>> seen;
  RationalVector row(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c) {
            row.setConstant(Rational(0));
            row(c) = wv(i, j, a, b);
            row(a) = wv(i, j, b, c);
            row(b) = wv(i, j, c, a);
            if (row(a) == 0 && row(b) == 0 && row(c) == 0) continue;
            if (dedup) {
              // scale-normalize so proportional rows collapse
              Rational lead = 0;
              for (int k = 0; k < n; ++k)
                if (row(k) != 0) {
                  lead = row(k);
                  break;
                }
              std::vector<Rational> key;
              key.reserve(static_cast<std::size_t>(n));
              for (int k = 0; k < n; ++k) key.push_back(row(k) / lead);
              if (!seen.insert(std::move(key)).second) continue;
            }
            rows.push_back(row);
          }

  WedgeSystem sys;
  sys.n = n;
  sys.rows.resize(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    sys.rows.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return sys;
}

/// Kernel of the wedge system at one point. When W vanishes at the point
/// the invariant is undefined (conformally flat point); this is reported
/// as d = n with the degenerate flag set rather than an error, so
/// negative controls behave deterministically.
struct OlszakResult {
  Point point;
  std::vector<RationalVector> kernel_basis;  // canonical (RREF rows)
  int d = 0;
  bool degenerate = false;
};

inline OlszakResult olszak_rank_at(const TensorField& weyl, const Point& p) {
  const int n = weyl.n();
  OlszakResult res;
  res.point = p;

  const std::vector<Rational> w = evaluate_at(weyl, p);
  bool all_zero = true;
  for (const auto& v : w)
    if (v != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) {
    res.degenerate = true;
    res.d = n;
    for (int i = 0; i < n; ++i) {
      RationalVector e(n);
      e.setConstant(Rational(0));
      e(i) = 1;
      res.kernel_basis.push_back(e);
    }
    return res;
  }

  const WedgeSystem sys = assemble_wedge_system(w, n);
  res.kernel_basis = exact_kernel(sys.rows);
  res.d = static_cast<int>(res.kernel_basis.size());
  return res;
}

/// True when v lies in the span of the (canonical RREF) basis.
inline bool in_span(const std::vector<RationalVector>& basis,
                    const RationalVector& v) {
  if (basis.empty()) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v(i) != 0) return false;
    return true;
  }
  RationalMatrix m(static_cast<Eigen::Index>(basis.size()) + 1, v.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = basis[i].transpose();
  m.row(m.rows() - 1) = v.transpose();
  return exact_rank(m) == static_cast<Eigen::Index>(basis.size());
}

/// Pointwise rank constancy across sample points: all d equal and all
/// kernel bases spanning the same space (canonical form makes that a
/// literal comparison).
inline CheckList rank_constancy(const std::vector<OlszakResult>& results) {
  if (results.size() < 2)
    throw std::invalid_argument("rank_constancy: need >= 2 points");
  CheckList r;
  const auto& first = results.front();
  bool d_const = true, kernel_const = true;
  std::string detail;
  for (const auto& res : results) {
    if (res.d != first.d) d_const = false;
    if (res.kernel_basis.size() != first.kernel_basis.size()) {
      kernel_const = false;
    } else {
      for (std::size_t i = 0; i < res.kernel_basis.size(); ++i)
        if (!vec_equal(res.kernel_basis[i], first.kernel_basis[i]))
          kernel_const = false;
    }
  }
  r.add("d constant across sample points", d_const,
        "pointwise kernel dimension varies");
  r.add("kernel space constant across sample points", kernel_const,
        "kernel bases differ between points");
  return r;
}

/// The null-parallel facts about the last coordinate field: d_n is null
/// and parallel, its metric dual is dx^1, and dx^1 lies in the Olszak
/// kernel at every sampled point.
struct NullParallelReport {
  bool is_null = false;
  bool is_parallel = false;
  bool dual_is_dx1 = false;
  bool dx1_in_kernel = false;
  std::string detail;

  bool all_ok() const {
    return is_null && is_parallel && dual_is_dx1 && dx1_in_kernel;
  }
};

inline NullParallelReport null_parallel_check(
    const TensorField& g, const TensorField& gamma,
    const std::vector<OlszakResult>& olszak_results) {
  const int n = g.n();
  NullParallelReport rep;

  rep.is_null = g(n - 1, n - 1).is_zero();
  if (!rep.is_null)
    rep.detail += "g_nn = " + g(n - 1, n - 1).to_string() + "; ";

  rep.is_parallel = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!gamma(j, i, n - 1).is_zero()) {
        rep.is_parallel = false;
        rep.detail += "Gamma^" + std::to_string(j + 1) + "_{" +
                      std::to_string(i + 1) + ",n} = " +
                      gamma(j, i, n - 1).to_string() + "; ";
      }

  rep.dual_is_dx1 = true;
  for (int i = 0; i < n; ++i) {
    const MultiPoly expect =
        (i == 0) ? MultiPoly::constant(n, 1) : MultiPoly(n);
    if (!(g(n - 1, i) == expect)) {
      rep.dual_is_dx1 = false;
      rep.detail += "g(d_n, d_" + std::to_string(i + 1) + ") = " +
                    g(n - 1, i).to_string() + "; ";
    }
  }

  rep.dx1_in_kernel = !olszak_results.empty();
  RationalVector dx1(n);
  dx1.setConstant(Rational(0));
  dx1(0) = 1;
  for (const auto& res : olszak_results)
    if (!in_span(res.kernel_basis, dx1)) {
      rep.dx1_in_kernel = false;
      rep.detail += "dx^1 not in kernel at a sample point; ";
    }

  return rep;
}

/// For rank-1 A (the d = 2 case): the non-dx^1 kernel direction,
/// restricted to the block slots, must be proportional to every nonzero
/// row of A, with vanishing last component. Proportionality is checked
/// by cross-multiplication, never division.
struct Rank1StructureReport {
  enum class Outcome { Pass, Fail, Skipped } outcome = Outcome::Skipped;
  std::string detail;
};

inline Rank1StructureReport rank1_kernel_structure(const RationalMatrix& a,
                                                   const OlszakResult& res) {
  Rank1StructureReport rep;
  if (exact_rank(a) != 1 || res.d != 2) {
    rep.outcome = Rank1StructureReport::Outcome::Skipped;
    rep.detail = "precondition rank A = 1 and d = 2 not met";
    return rep;
  }
  const int n = static_cast<int>(a.rows()) + 2;

  // canonical basis: first vector is dx^1, second is the structure vector
  const RationalVector& w = res.kernel_basis[1];
  if (w(n - 1) != 0) {
    rep.outcome = Rank1StructureReport::Outcome::Fail;
    rep.detail = "kernel direction has nonzero xi_n component";
    return rep;
  }

  for (Eigen::Index row = 0; row < a.rows(); ++row) {
    bool zero_row = true;
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (a(row, c) != 0) zero_row = false;
    if (zero_row) continue;
    for (Eigen::Index i = 0; i < a.cols(); ++i)
      for (Eigen::Index j = i + 1; j < a.cols(); ++j)
        if (w(1 + i) * a(row, j) != w(1 + j) * a(row, i)) {
          rep.outcome = Rank1StructureReport::Outcome::Fail;
          rep.detail = "kernel direction not proportional to row " +
                       std::to_string(row + 2) + " of A";
          return rep;
        }
  }
  rep.outcome = Rank1StructureReport::Outcome::Pass;
  return rep;
}

}  // namespace ecslab
