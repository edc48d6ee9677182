#pragma once

#include <cctype>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgcluster/checked.hpp"
#include "lgcluster/monomial.hpp"

namespace lgcluster {

// Sparse Laurent polynomial with integer coefficients in a fixed number of
// variables. Terms are kept in lexicographic order of exponents and zero
// coefficients are never stored, so structural equality is mathematical
// equality.
class LaurentPoly {
 public:
  using TermMap = std::map<Monomial, Coeff>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}
  LaurentPoly(const Monomial& m, Coeff c) : nvars_(m.nvars()) { add_term(m, c); }

  static LaurentPoly zero(std::size_t nvars) { return LaurentPoly(nvars); }
  static LaurentPoly one(std::size_t nvars) { return constant(nvars, 1); }
  static LaurentPoly constant(std::size_t nvars, Coeff c) { return {Monomial(nvars), c}; }
  static LaurentPoly variable(std::size_t nvars, std::size_t var, Exponent e = 1) {
    return {Monomial::unit(nvars, var, e), 1};
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
  }

  Coeff coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
  }
  Coeff constant_term() const { return coeff(Monomial(nvars_)); }

  // Lex-largest and lex-smallest terms; the polynomial must be nonzero.
  const std::pair<const Monomial, Coeff>& leading_term() const { return *terms_.rbegin(); }
  const std::pair<const Monomial, Coeff>& trailing_term() const { return *terms_.begin(); }

  void add_term(const Monomial& m, Coeff c) {
    if (m.nvars() != nvars_) throw VariableCountMismatch(nvars_, m.nvars());
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = checked_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  // this += c * m * p
  void add_scaled(const LaurentPoly& p, Coeff c, const Monomial& m) {
    check_same(p);
    if (c == 0) return;
    for (const auto& [pm, pc] : p.terms_) add_term(pm * m, checked_mul(pc, c));
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, checked_neg(c));
    return *this;
  }
  LaurentPoly operator-() const {
    LaurentPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, checked_neg(c));
    return r;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same(b);
    LaurentPoly r(a.nvars_);
    const LaurentPoly& outer = a.size() <= b.size() ? a : b;
    const LaurentPoly& inner = a.size() <= b.size() ? b : a;
    for (const auto& [m, c] : outer.terms_) r.add_scaled(inner, c, m);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(Coeff c) const {
    LaurentPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, checked_mul(k, c));
    return r;
  }

  // Multiplication by a monomial preserves the term order.
  LaurentPoly shifted(const Monomial& s) const {
    LaurentPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m * s, c);
    return r;
  }

  LaurentPoly pow(std::size_t k) const {
    LaurentPoly result = one(nvars_);
    LaurentPoly base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k > 0) base *= base;
    }
    return result;
  }

  // Coordinatewise minimum / maximum exponents over the support.
  Monomial min_exponents() const { return bound(true); }
  Monomial max_exponents() const { return bound(false); }

  // gcd of all coefficients (0 for the zero polynomial).
  Coeff content() const {
    Coeff g = 0;
    for (const auto& [m, c] : terms_) g = abs_gcd(g, c);
    return g;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string(std::string_view var = "z") const;

 private:
  void check_same(const LaurentPoly& o) const {
    if (o.nvars_ != nvars_) throw VariableCountMismatch(nvars_, o.nvars_);
  }

  Monomial bound(bool lower) const {
    Monomial b(nvars_);
    bool first = true;
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (first || (lower ? m[i] < b[i] : m[i] > b[i])) b[i] = m[i];
      }
      first = false;
    }
    return b;
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

inline LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
inline LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

struct DivisionResult {
  LaurentPoly quotient;
  LaurentPoly remainder;
};

// Division with remainder in the Laurent ring under lex order.
//
// If a = q*b exactly then q's exponents lie in the box
// [min(a) - min(b), max(a) - max(b)] coordinatewise, LT(a) = LT(q)LT(b), and
// LC(b) divides LC of every intermediate remainder. Any leading term that
// cannot be cancelled under those constraints is moved to the remainder, so
// remainder == 0 iff b divides a. Termination: all remainder candidates live
// in a finite set and the leading term strictly decreases.
inline DivisionResult divide(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero polynomial");
  if (a.nvars() != b.nvars()) throw VariableCountMismatch(a.nvars(), b.nvars());
  const std::size_t n = a.nvars();
  DivisionResult out{LaurentPoly(n), LaurentPoly(n)};
  if (a.is_zero()) return out;

  const Monomial amin = a.min_exponents(), amax = a.max_exponents();
  const Monomial bmin = b.min_exponents(), bmax = b.max_exponents();
  Monomial qlo(n), qhi(n);
  bool box_empty = false;
  for (std::size_t i = 0; i < n; ++i) {
    qlo[i] = checked_sub(amin[i], bmin[i]);
    qhi[i] = checked_sub(amax[i], bmax[i]);
    if (qlo[i] > qhi[i]) box_empty = true;
  }
  if (box_empty) {
    out.remainder = a;
    return out;
  }

  const auto& [lead_m, lead_c] = b.leading_term();
  LaurentPoly r = a;
  while (!r.is_zero()) {
    const auto [rm, rc] = r.leading_term();
    Monomial t = rm / lead_m;
    bool in_box = true;
    for (std::size_t i = 0; i < n && in_box; ++i) in_box = t[i] >= qlo[i] && t[i] <= qhi[i];
    if (!in_box || rc % lead_c != 0) {
      out.remainder.add_term(rm, rc);
      r.add_term(rm, checked_neg(rc));
      continue;
    }
    const Coeff tc = rc / lead_c;
    out.quotient.add_term(t, tc);
    r.add_scaled(b, checked_neg(tc), t);
  }
  return out;
}

// Returns q with q*b == a, or nullopt when b does not divide a.
inline std::optional<LaurentPoly> exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  auto [q, r] = divide(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

// Canonical text: terms in ascending lex order of exponents,
// e.g. "z1^-1*z2^-1 + z2 + z1".
inline std::string LaurentPoly::to_string(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Coeff mag = c;
    if (first) {
      if (c < 0) {
        os << '-';
        mag = checked_neg(c);
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) mag = checked_neg(c);
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.is_one()) {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << '*';
      os << var << (i + 1);
      if (m[i] != 1) os << '^' << m[i];
      wrote = true;
    }
  }
  return os.str();
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars, std::string_view var)
      : s_(text), nvars_(nvars), var_(var) {}

  LaurentPoly parse() {
    LaurentPoly p(nvars_);
    skip_ws();
    if (at_end()) fail("empty expression");
    bool first = true;
    while (!at_end()) {
      Coeff sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = parse_term();
      p.add_term(m, checked_mul(sign, c));
      skip_ws();
    }
    return p;
  }

 private:
  std::pair<Monomial, Coeff> parse_term() {
    Monomial m(nvars_);
    Coeff c = 1;
    while (true) {
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c = checked_mul(c, parse_coeff());
      } else if (s_.substr(pos_, var_.size()) == var_) {
        pos_ += var_.size();
        const Exponent idx = parse_int();
        if (idx < 1 || static_cast<std::size_t>(idx) > nvars_) fail("variable index out of range");
        Exponent e = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          skip_ws();
          const bool braced = peek() == '(' || peek() == '{';
          if (braced) ++pos_;
          Exponent sign = 1;
          if (peek() == '-') {
            sign = -1;
            ++pos_;
          }
          e = checked_mul(sign, parse_int());
          if (braced) {
            if (peek() != ')' && peek() != '}') fail("unbalanced exponent bracket");
            ++pos_;
          }
        }
        m[static_cast<std::size_t>(idx - 1)] = checked_add(m[static_cast<std::size_t>(idx - 1)], e);
      } else {
        fail("expected integer or variable");
      }
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      return {m, c};
    }
  }

  Coeff parse_coeff() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Coeff(std::string(s_.substr(start, pos_ - start)));
  }

  Exponent parse_int() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    Exponent v = 0;
    for (std::size_t i = start; i < pos_; ++i) v = checked_add(checked_mul(v, 10), s_[i] - '0');
    return v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("cannot parse polynomial at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t nvars_;
  std::string_view var_;
};

}  // namespace detail

// Parses the canonical text form (and the looser forms a human would type:
// any term order, "x^{-1}", "x^(-1)", repeated factors).
inline LaurentPoly parse_laurent(std::string_view text, std::size_t nvars, std::string_view var = "z") {
  return detail::PolyParser(text, nvars, var).parse();
}

}  // namespace lgcluster
