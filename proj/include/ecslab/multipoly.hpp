#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecslab/rational.hpp"

namespace ecslab {

/// Sparse multivariate polynomial over Rational. Terms are keyed by
/// exponent vector (length nvars, lexicographic map order gives the
/// canonical term ordering); zero coefficients are never stored.
///
/// Coordinates are 1-based at the interface (x^1..x^n) to match the
/// usual index conventions of the geometry on top of this.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, Rational c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.emplace(Exponents(nvars, 0), std::move(c));
    return p;
  }

  /// x^k, k in 1..nvars.
  static MultiPoly variable(int nvars, int k) {
    return monomial(nvars, k, 1, 1);
  }

  /// c * (x^k)^e
  static MultiPoly monomial(int nvars, int k, int e, Rational c) {
    check_index(nvars, k);
    MultiPoly p(nvars);
    if (c != 0) {
      Exponents ex(nvars, 0);
      ex[k - 1] = e;
      p.terms_.emplace(std::move(ex), std::move(c));
    }
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(),
                        terms_.begin()->first.end(),
                        [](int e) { return e == 0; }));
  }

  /// Value of a constant polynomial; throws for non-constant input.
  Rational constant_value() const {
    if (is_zero()) return 0;
    if (!is_constant())
      throw std::invalid_argument("MultiPoly: not a constant polynomial");
    return terms_.begin()->second;
  }

  const std::map<Exponents, Rational>& terms() const { return terms_; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    auto [x, y] = aligned(a, b);
    MultiPoly r = x;
    for (const auto& [e, c] : y.terms_) r.add_term(e, c);
    return r;
  }

  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    auto [x, y] = aligned(a, b);
    MultiPoly r = x;
    for (const auto& [e, c] : y.terms_) r.add_term(e, -c);
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    auto [x, y] = aligned(a, b);
    MultiPoly r(x.nvars_);
    Exponents e(static_cast<std::size_t>(x.nvars_));
    for (const auto& [ea, ca] : x.terms_)
      for (const auto& [eb, cb] : y.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  friend MultiPoly operator*(const Rational& c, const MultiPoly& p) {
    MultiPoly r(p.nvars_);
    if (c == 0) return r;
    for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& p, const Rational& c) {
    return c * p;
  }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }

  /// Exact partial derivative with respect to x^k (1-based).
  MultiPoly partial(int k) const {
    check_index(nvars_, k);
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      const int ek = e[k - 1];
      if (ek == 0) continue;
      Exponents de = e;
      --de[k - 1];
      r.add_term(de, c * ek);
    }
    return r;
  }

  /// Exact evaluation at a rational point; point length must be nvars.
  Rational eval(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != nvars_)
      throw std::invalid_argument("MultiPoly::eval: point length mismatch");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int j = 0; j < e[i]; ++j) t *= point[i];
      acc += t;
    }
    return acc;
  }

  int degree_in(int k) const {
    check_index(nvars_, k);
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[k - 1]);
    return d;
  }

  /// True when the polynomial involves only x^k.
  bool depends_only_on(int k) const {
    check_index(nvars_, k);
    for (const auto& [e, c] : terms_)
      for (int i = 0; i < nvars_; ++i)
        if (i != k - 1 && e[i] != 0) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) out << " + ";
      first = false;
      out << format_rational(c);
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        out << "*x" << (i + 1);
        if (e[i] > 1) out << "^" << e[i];
      }
    }
    return out.str();
  }

 private:
  static void check_index(int nvars, int k) {
    if (k < 1 || k > nvars)
      throw std::invalid_argument("MultiPoly: coordinate index out of range");
  }

  // Zero (or constant-free default) polynomials interoperate with any
  // nvars; everything else must agree.
  static std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a,
                                                const MultiPoly& b) {
    if (a.nvars_ == b.nvars_) return {a, b};
    if (a.is_constant()) {
      return {constant(b.nvars_, a.constant_value()), b};
    }
    if (b.is_constant()) {
      return {a, constant(a.nvars_, b.constant_value())};
    }
    throw std::invalid_argument("MultiPoly: nvars mismatch");
  }

  void add_term(const Exponents& e, Rational c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, std::move(c));
      return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  int nvars_;
  std::map<Exponents, Rational> terms_;
};

}  // namespace ecslab
