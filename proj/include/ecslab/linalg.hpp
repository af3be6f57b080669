#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "ecslab/multipoly.hpp"
#include "ecslab/rational.hpp"

namespace ecslab {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Square matrix of polynomials, row-major. Used only where the
/// determinant/adjugate must stay in the polynomial ring.
using PolyMatrix = std::vector<std::vector<MultiPoly>>;

/// In-place reduced row echelon form by exact Gauss-Jordan elimination.
/// Returns the pivot column of each nonzero row, in order.
inline std::vector<Eigen::Index> reduce_to_rref(RationalMatrix& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row) m.row(p).swap(m.row(row));
    m.row(row) /= m(row, col);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != row && m(r, col) != 0) m.row(r) -= m(r, col) * m.row(row);
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline Eigen::Index exact_rank(RationalMatrix m) {
  return static_cast<Eigen::Index>(reduce_to_rref(m).size());
}

/// Kernel basis, canonicalized: the basis matrix is itself in reduced row
/// echelon form, so each vector has leading entry 1 and the vectors are
/// echelon-ordered. Basis size = cols - rank. An empty (0-row) matrix has
/// the full standard basis as kernel.
inline std::vector<RationalVector> exact_kernel(const RationalMatrix& m) {
  const Eigen::Index n = m.cols();
  RationalMatrix r = m;
  const auto pivots = reduce_to_rref(r);

  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  RationalMatrix basis(n - static_cast<Eigen::Index>(pivots.size()), n);
  basis.setConstant(Rational(0));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(k, free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      basis(k, pivots[i]) = -r(static_cast<Eigen::Index>(i), free);
    ++k;
  }
  reduce_to_rref(basis);

  std::vector<RationalVector> out;
  out.reserve(static_cast<std::size_t>(basis.rows()));
  for (Eigen::Index i = 0; i < basis.rows(); ++i)
    out.push_back(basis.row(i).transpose());
  return out;
}

inline bool vec_equal(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

inline bool is_zero_matrix(const RationalMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

/// Exact inverse by Gauss-Jordan; throws on singular input.
inline RationalMatrix exact_inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("exact_inverse: matrix not square");
  const Eigen::Index n = m.rows();
  RationalMatrix aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n).setConstant(Rational(0));
  for (Eigen::Index i = 0; i < n; ++i) aug(i, n + i) = 1;
  const auto pivots = reduce_to_rref(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n ||
      (n > 0 && pivots.back() >= n))
    throw std::invalid_argument("exact_inverse: matrix is singular");
  return aug.rightCols(n);
}

inline Rational exact_det(RationalMatrix m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("exact_det: matrix not square");
  Rational det = 1;
  const Eigen::Index n = m.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (m(r, col) != 0) {
        p = r;
        break;
      }
    if (p < 0) return 0;
    if (p != col) {
      m.row(p).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (m(r, col) != 0)
        m.row(r) -= (m(r, col) / m(col, col)) * m.row(col);
  }
  return det;
}

namespace detail {

// Laplace expansion along successive rows, skipping zero entries; the
// metrics this runs on are mostly zeros, so the n! worst case never
// materializes.
inline MultiPoly poly_det_rec(const PolyMatrix& m,
                              std::vector<int>& cols_alive,
                              int row) {
  const int n = static_cast<int>(m.size());
  const int nvars = n ? m[0][0].nvars() : 0;
  if (row == n) return MultiPoly::constant(nvars, 1);

  MultiPoly acc(nvars);
  int sign = 1;
  for (std::size_t i = 0; i < cols_alive.size(); ++i) {
    const int c = cols_alive[i];
    if (c >= 0 && !m[row][c].is_zero()) {
      cols_alive[i] = -1;
      MultiPoly sub = poly_det_rec(m, cols_alive, row + 1);
      cols_alive[i] = c;
      MultiPoly term = m[row][c] * sub;
      acc = (sign > 0) ? acc + term : acc - term;
    }
    if (c >= 0) sign = -sign;
  }
  return acc;
}

}  // namespace detail

inline MultiPoly poly_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n)
      throw std::invalid_argument("poly_det: matrix not square");
  if (n == 0) return MultiPoly::constant(0, 1);
  std::vector<int> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = static_cast<int>(i);
  return detail::poly_det_rec(m, cols, 0);
}

/// Adjugate-transpose entry: cofactor C_ij = (-1)^{i+j} det(minor_ij).
inline MultiPoly poly_cofactor(const PolyMatrix& m, std::size_t i,
                               std::size_t j) {
  const std::size_t n = m.size();
  PolyMatrix minor(n - 1, std::vector<MultiPoly>(n - 1));
  for (std::size_t r = 0, mr = 0; r < n; ++r) {
    if (r == i) continue;
    for (std::size_t c = 0, mc = 0; c < n; ++c) {
      if (c == j) continue;
      minor[mr][mc++] = m[r][c];
    }
    ++mr;
  }
  MultiPoly d = poly_det(minor);
  return ((i + j) % 2 == 0) ? d : -d;
}

}  // namespace ecslab
