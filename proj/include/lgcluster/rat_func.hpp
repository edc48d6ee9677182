#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lgcluster/laurent_poly.hpp"

namespace lgcluster {

// Quotient of two Laurent polynomials. The denominator is never zero.
//
// Canonical form (applied on construction): if the denominator divides the
// numerator the value collapses to a Laurent polynomial over 1; otherwise the
// pair is shifted so the denominator has coordinatewise minimum exponent 0,
// the common integer content is removed, and the denominator's lex-leading
// coefficient is made positive. No multivariate gcd is taken, so equality is
// decided by cross-multiplication.
class RatFunc {
 public:
  RatFunc() : den_(LaurentPoly::one(0)) {}
  RatFunc(LaurentPoly p)  // NOLINT(google-explicit-constructor)
      : num_(std::move(p)), den_(LaurentPoly::one(num_.nvars())) {}
  RatFunc(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
  }

  std::size_t nvars() const { return num_.nvars(); }
  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_.is_one(); }

  RatFunc operator-() const { return RatFunc(-num_, den_, Raw{}); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_laurent() && b.is_laurent()) return RatFunc(a.num_ * b.num_);
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    return {den_, num_};
  }

  // Cross-multiplication identity; independent of the reduction state.
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.nvars() != b.nvars()) throw VariableCountMismatch(a.nvars(), b.nvars());
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  std::string to_string(std::string_view var = "z") const {
    if (is_laurent()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }

 private:
  struct Raw {};
  RatFunc(LaurentPoly num, LaurentPoly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}

  void canonicalize() {
    if (num_.nvars() != den_.nvars()) throw VariableCountMismatch(num_.nvars(), den_.nvars());
    if (den_.is_zero()) throw DivisionByZero("zero denominator");
    const std::size_t n = num_.nvars();
    if (num_.is_zero()) {
      den_ = LaurentPoly::one(n);
      return;
    }
    if (auto q = exact_div(num_, den_)) {
      num_ = std::move(*q);
      den_ = LaurentPoly::one(n);
      return;
    }
    const Monomial shift = den_.min_exponents().inverse();
    if (!shift.is_one()) {
      num_ = num_.shifted(shift);
      den_ = den_.shifted(shift);
    }
    Coeff g = abs_gcd(num_.content(), den_.content());
    if (den_.leading_term().second < 0) g = -g;
    if (g != 1) {
      num_ = divide_content(num_, g);
      den_ = divide_content(den_, g);
    }
  }

  static LaurentPoly divide_content(const LaurentPoly& p, Coeff g) {
    LaurentPoly r(p.nvars());
    for (const auto& [m, c] : p.terms()) r.add_term(m, c / g);
    return r;
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

// a^k as a rational function; negative k inverts.
inline RatFunc pow(const LaurentPoly& a, Exponent k) {
  if (k >= 0) return RatFunc(a.pow(static_cast<std::size_t>(k)));
  if (a.is_zero()) throw DivisionByZero("zero base with negative exponent");
  return RatFunc(LaurentPoly::one(a.nvars()), a.pow(static_cast<std::size_t>(-k)));
}

inline RatFunc pow(const RatFunc& a, Exponent k) {
  if (k >= 0) {
    return RatFunc(a.num().pow(static_cast<std::size_t>(k)), a.den().pow(static_cast<std::size_t>(k)));
  }
  if (a.is_zero()) throw DivisionByZero("zero base with negative exponent");
  return RatFunc(a.den().pow(static_cast<std::size_t>(-k)), a.num().pow(static_cast<std::size_t>(-k)));
}

namespace detail {

// Lazily filled table of p^0, p^1, ...
class PowerCache {
 public:
  explicit PowerCache(const LaurentPoly& base) : powers_{LaurentPoly::one(base.nvars()), base} {}
  const LaurentPoly& get(std::size_t k) {
    while (powers_.size() <= k) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[k];
  }

 private:
  std::vector<LaurentPoly> powers_;
};

// A single-term polynomial c*m, raised to powers without touching maps.
struct ScaledMonomial {
  Coeff coeff;
  Monomial mono;
};

inline ScaledMonomial power_of_term(const LaurentPoly& p, Exponent k) {
  const auto& [m, c] = *p.terms().begin();
  Coeff r = 1;
  for (Exponent i = 0; i < k; ++i) r = checked_mul(r, c);
  return {r, m.pow(k)};
}

}  // namespace detail

// Ring-homomorphic substitution x_j -> images[j].
//
// All terms are brought over the common denominator
//   prod_j num_j^{-lo_j} den_j^{hi_j},   lo_j = min(0, min e_j), hi_j = max(0, max e_j).
// Terms are grouped by their exponents in the variables whose image is not a
// single term, so each binomial power is multiplied once per group.
inline RatFunc substitute(const LaurentPoly& f, std::span<const RatFunc> images) {
  if (images.size() != f.nvars()) throw VariableCountMismatch(f.nvars(), images.size());
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  for (const auto& im : images) {
    if (im.nvars() != target) throw VariableCountMismatch(target, im.nvars());
  }
  if (f.is_zero()) return RatFunc(LaurentPoly::zero(target));
  const std::size_t n = f.nvars();
  const Monomial lo_raw = f.min_exponents(), hi_raw = f.max_exponents();
  std::vector<Exponent> lo(n), hi(n);
  std::vector<std::size_t> poly_vars, mono_vars;
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = std::min<Exponent>(0, lo_raw[j]);
    hi[j] = std::max<Exponent>(0, hi_raw[j]);
    if (images[j].is_zero() && lo[j] < 0) {
      throw DivisionByZero("zero image for variable " + std::to_string(j + 1) +
                           " occurring with negative exponent");
    }
    const bool single = images[j].num().size() <= 1 && images[j].den().size() == 1;
    if (lo[j] == hi[j]) continue;  // exponent is 0 in every term
    (single ? mono_vars : poly_vars).push_back(j);
  }

  LaurentPoly denominator = LaurentPoly::one(target);
  for (std::size_t j = 0; j < n; ++j) {
    if (lo[j] < 0) denominator *= images[j].num().pow(static_cast<std::size_t>(-lo[j]));
    if (hi[j] > 0) denominator *= images[j].den().pow(static_cast<std::size_t>(hi[j]));
  }

  std::map<std::vector<Exponent>, LaurentPoly> groups;
  for (const auto& [m, c] : f.terms()) {
    Coeff coeff = c;
    Monomial mono(target);
    bool vanishes = false;
    for (std::size_t j : mono_vars) {
      const Exponent up = m[j] - lo[j], down = hi[j] - m[j];
      if (images[j].is_zero()) {
        if (up > 0) vanishes = true;
      } else if (up > 0) {
        auto t = detail::power_of_term(images[j].num(), up);
        coeff = checked_mul(coeff, t.coeff);
        mono *= t.mono;
      }
      if (down > 0) {
        auto t = detail::power_of_term(images[j].den(), down);
        coeff = checked_mul(coeff, t.coeff);
        mono *= t.mono;
      }
    }
    if (vanishes) continue;
    std::vector<Exponent> key;
    key.reserve(poly_vars.size());
    for (std::size_t j : poly_vars) key.push_back(m[j]);
    auto it = groups.try_emplace(std::move(key), target).first;
    it->second.add_term(mono, coeff);
  }

  std::vector<detail::PowerCache> num_pows, den_pows;
  for (std::size_t j : poly_vars) {
    num_pows.emplace_back(images[j].num());
    den_pows.emplace_back(images[j].den());
  }
  LaurentPoly numerator(target);
  for (const auto& [key, part] : groups) {
    LaurentPoly acc = part;
    for (std::size_t k = 0; k < poly_vars.size(); ++k) {
      const std::size_t j = poly_vars[k];
      const Exponent up = key[k] - lo[j], down = hi[j] - key[k];
      if (up > 0) acc = acc * num_pows[k].get(static_cast<std::size_t>(up));
      if (down > 0) acc = acc * den_pows[k].get(static_cast<std::size_t>(down));
    }
    numerator += acc;
  }
  return {std::move(numerator), std::move(denominator)};
}

inline RatFunc substitute(const RatFunc& f, std::span<const RatFunc> images) {
  if (f.is_laurent()) return substitute(f.num(), images);
  const RatFunc top = substitute(f.num(), images);
  const RatFunc bottom = substitute(f.den(), images);
  if (bottom.is_zero()) throw DivisionByZero("substitution sends the denominator to zero");
  return top / bottom;
}

// The images x_j -> x_j in `nvars` variables.
inline std::vector<RatFunc> identity_images(std::size_t nvars) {
  std::vector<RatFunc> out;
  out.reserve(nvars);
  for (std::size_t j = 0; j < nvars; ++j) out.emplace_back(LaurentPoly::variable(nvars, j));
  return out;
}

}  // namespace lgcluster
