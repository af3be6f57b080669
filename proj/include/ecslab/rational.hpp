#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>

namespace ecslab {

/// Exact rational scalar. Always kept canonical (lowest terms, positive
/// denominator); every constructor path below canonicalizes.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or a plain integer literal. Whitespace is not accepted.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const auto slash = text.find('/');
  const auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (slash == std::string_view::npos) {
    if (!is_int(text)) return std::nullopt;
    return Rational(mpz_class(std::string(text)));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) return std::nullopt;
  mpz_class d{std::string(den)};
  if (d == 0) return std::nullopt;
  Rational r(mpz_class(std::string(num)), d);
  r.canonicalize();
  return r;
}

/// Canonical rendering: "p" for integers, "p/q" otherwise.
inline std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace ecslab

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen
