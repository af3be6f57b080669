#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "ecslab/multipoly.hpp"
#include "ecslab/rational.hpp"

namespace ecslab {

enum class Variance { Lower, Upper };

/// A coordinate point x^1..x^n with exact rational coordinates.
struct Point {
  std::vector<Rational> coords;

  int n() const { return static_cast<int>(coords.size()); }
};

/// Dense coordinate tensor field on R^n with polynomial components and a
/// fixed variance per slot. Component indices are 0-based internally
/// (index i corresponds to the coordinate x^{i+1}).
class TensorField {
 public:
  TensorField(int n, std::vector<Variance> variance)
      : n_(n), variance_(std::move(variance)) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < variance_.size(); ++i) size *= n_;
    comp_.assign(size, MultiPoly(n_));
  }

  int n() const { return n_; }
  int rank() const { return static_cast<int>(variance_.size()); }
  const std::vector<Variance>& variance() const { return variance_; }
  bool all_lower() const {
    for (auto v : variance_)
      if (v != Variance::Lower) return false;
    return true;
  }

  const std::vector<MultiPoly>& components() const { return comp_; }
  std::vector<MultiPoly>& components() { return comp_; }

  std::size_t flat_index(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank())
      throw std::invalid_argument("TensorField: index rank mismatch");
    std::size_t f = 0;
    for (int i : idx) {
      if (i < 0 || i >= n_)
        throw std::invalid_argument("TensorField: index out of range");
      f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    }
    return f;
  }

  MultiPoly& at(std::initializer_list<int> idx) {
    return comp_[flat_index(std::span<const int>(idx.begin(), idx.size()))];
  }
  const MultiPoly& at(std::initializer_list<int> idx) const {
    return comp_[flat_index(std::span<const int>(idx.begin(), idx.size()))];
  }

  template <typename... I>
  MultiPoly& operator()(I... idx) {
    return at({static_cast<int>(idx)...});
  }
  template <typename... I>
  const MultiPoly& operator()(I... idx) const {
    return at({static_cast<int>(idx)...});
  }

  bool is_zero() const {
    for (const auto& c : comp_)
      if (!c.is_zero()) return false;
    return true;
  }

  friend bool operator==(const TensorField& a, const TensorField& b) {
    return a.n_ == b.n_ && a.variance_ == b.variance_ && a.comp_ == b.comp_;
  }

  /// Iterates all index tuples in row-major order.
  template <typename F>
  void for_each_index(F&& f) const {
    std::vector<int> idx(static_cast<std::size_t>(rank()), 0);
    const std::size_t total = comp_.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
      f(std::span<const int>(idx), flat);
      for (int slot = rank() - 1; slot >= 0; --slot) {
        if (++idx[static_cast<std::size_t>(slot)] < n_) break;
        idx[static_cast<std::size_t>(slot)] = 0;
      }
    }
  }

 private:
  int n_;
  std::vector<Variance> variance_;
  std::vector<MultiPoly> comp_;
};

/// Componentwise exact evaluation; result in the tensor's row-major order.
inline std::vector<Rational> evaluate_at(const TensorField& t, const Point& p) {
  if (p.n() != t.n())
    throw std::invalid_argument("evaluate_at: point length mismatch");
  std::vector<Rational> out;
  out.reserve(t.components().size());
  for (const auto& c : t.components()) out.push_back(c.eval(p.coords));
  return out;
}

}  // namespace ecslab
