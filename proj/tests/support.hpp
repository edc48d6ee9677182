#pragma once

// Test helpers: random inputs with fixed seeds and an evaluation oracle over
// the rationals that shares no code with the library's arithmetic.

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lgcluster/lgcluster.hpp"

// gtest failure messages
namespace lgcluster {
inline void PrintTo(const LaurentPoly& f, std::ostream* os) { *os << f.to_string(); }
inline void PrintTo(const RatFunc& f, std::ostream* os) { *os << "(" << f.num().to_string() << ") / (" << f.den().to_string() << ")"; }
}  // namespace lgcluster

namespace testing_support {

using lgcluster::Coeff;
using lgcluster::Exponent;
using lgcluster::LaurentPoly;
using lgcluster::Monomial;
using lgcluster::RatFunc;
using Rational = boost::multiprecision::cpp_rational;

inline LaurentPoly random_poly(std::mt19937_64& rng, std::size_t nvars, std::size_t max_terms = 4,
                               Exponent max_exp = 2, int max_coeff = 3) {
  std::uniform_int_distribution<std::size_t> nterms(1, max_terms);
  std::uniform_int_distribution<Exponent> exp(-max_exp, max_exp);
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  LaurentPoly f(nvars);
  const std::size_t k = nterms(rng);
  for (std::size_t t = 0; t < k; ++t) {
    Monomial m(nvars);
    for (std::size_t i = 0; i < nvars; ++i) m[i] = exp(rng);
    int c = coeff(rng);
    if (c == 0) c = 1;
    f.add_term(m, c);
  }
  if (f.is_zero()) f = LaurentPoly::one(nvars);
  return f;
}

inline std::vector<Rational> random_rational_point(std::mt19937_64& rng, std::size_t nvars) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<Rational> pt(nvars);
  for (auto& x : pt) {
    int a = 0;
    while (a == 0) a = num(rng);
    x = Rational(a, den(rng));
  }
  return pt;
}

inline Rational rpow(const Rational& x, Exponent e) {
  Rational r = 1;
  const Rational base = e < 0 ? Rational(1) / x : x;
  for (Exponent i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
  return r;
}

// Term-by-term evaluation with rational arithmetic.
inline Rational eval_q(const LaurentPoly& f, std::span<const Rational> pt) {
  Rational acc = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational t(c);
    for (std::size_t i = 0; i < m.nvars(); ++i) t *= rpow(pt[i], m[i]);
    acc += t;
  }
  return acc;
}

inline std::optional<Rational> eval_q(const RatFunc& f, std::span<const Rational> pt) {
  const Rational d = eval_q(f.den(), pt);
  if (d == 0) return std::nullopt;
  return eval_q(f.num(), pt) / d;
}

}  // namespace testing_support
