#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lgcluster/rat_func.hpp"

namespace lgcluster {

namespace detail {
__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;
}  // namespace detail

// Mersenne prime 2^61 - 1. Per-trial false-equality probability of the
// randomized test is at most (total degree) / p.
inline constexpr std::uint64_t kDefaultPrime = (std::uint64_t{1} << 61) - 1;

// Arithmetic in Z/pZ for p < 2^63.
class ModP {
 public:
  explicit ModP(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (std::uint64_t{1} << 63)) throw InvalidArgument("modulus out of range");
  }
  std::uint64_t modulus() const { return p_; }

  std::uint64_t reduce(std::int64_t c) const {
    const detail::i128 r = static_cast<detail::i128>(c) % static_cast<detail::i128>(p_);
    return static_cast<std::uint64_t>(r < 0 ? r + p_ : r);
  }
  std::uint64_t reduce(const Coeff& c) const {
    Coeff r = c % p_;
    if (r < 0) r += p_;
    return static_cast<std::uint64_t>(r);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<detail::u128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t base, std::uint64_t e) const {
    std::uint64_t r = 1 % p_;
    base %= p_;
    while (e > 0) {
      if (e & 1U) r = mul(r, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return r;
  }
  // Requires p prime and a != 0 (Fermat).
  std::uint64_t inv(std::uint64_t a) const {
    if (a % p_ == 0) throw DivisionByZero("inverse of 0 mod p");
    return pow(a, p_ - 2);
  }

 private:
  std::uint64_t p_;
};

// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<detail::u128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e > 0) {
      if (e & 1U) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1U;
    }
    return r;
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// A point of (F_p^*)^n; every coordinate is invertible so Laurent monomials
// always evaluate.
class PrimePoint {
 public:
  PrimePoint(std::uint64_t prime, std::vector<std::uint64_t> coords)
      : prime_(prime), coords_(std::move(coords)) {
    if (prime_ < 3 || prime_ >= (std::uint64_t{1} << 63) || !is_prime_u64(prime_)) {
      throw InvalidArgument("PrimePoint modulus " + std::to_string(prime_) + " is not an odd prime below 2^63");
    }
    for (auto c : coords_) {
      if (c == 0 || c >= prime_) throw InvalidArgument("PrimePoint coordinate outside [1, p-1]");
    }
  }

  template <class Rng>
  static PrimePoint random(std::size_t nvars, std::uint64_t prime, Rng& rng) {
    PrimePoint out(prime, std::vector<std::uint64_t>(nvars, 1));
    std::uniform_int_distribution<std::uint64_t> dist(1, prime - 1);
    for (auto& c : out.coords_) c = dist(rng);
    return out;
  }

  // Same prime, coordinate k replaced. Skips the primality test.
  PrimePoint with_coord(std::size_t k, std::uint64_t value) const {
    if (k >= coords_.size()) throw IndexOutOfRange(k, coords_.size());
    if (value == 0 || value >= prime_) throw InvalidArgument("PrimePoint coordinate outside [1, p-1]");
    PrimePoint out = *this;
    out.coords_[k] = value;
    return out;
  }

  std::uint64_t prime() const { return prime_; }
  std::size_t nvars() const { return coords_.size(); }
  std::span<const std::uint64_t> coords() const { return coords_; }
  std::uint64_t operator[](std::size_t i) const { return coords_[i]; }

  std::string to_string() const {
    std::string s = "p=" + std::to_string(prime_) + " (";
    for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ", " : "") + std::to_string(coords_[i]);
    return s + ")";
  }

  friend bool operator==(const PrimePoint&, const PrimePoint&) = default;

 private:
  std::uint64_t prime_;
  std::vector<std::uint64_t> coords_;
};

// A Laurent polynomial prepared for repeated evaluation mod p: coefficients
// are reduced once, and each evaluation builds per-variable power tables over
// the exponent range instead of exponentiating term by term.
class ModpPoly {
 public:
  ModpPoly(const LaurentPoly& f, std::uint64_t prime) : field_(prime), nvars_(f.nvars()) {
    coeffs_.reserve(f.size());
    exps_.reserve(f.size() * nvars_);
    for (const auto& [m, c] : f.terms()) {
      const std::uint64_t r = field_.reduce(c);
      if (r == 0) continue;
      coeffs_.push_back(r);
      exps_.insert(exps_.end(), m.exponents().begin(), m.exponents().end());
    }
    lo_.assign(nvars_, 0);
    hi_.assign(nvars_, 0);
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      for (std::size_t i = 0; i < nvars_; ++i) {
        lo_[i] = std::min(lo_[i], exps_[t * nvars_ + i]);
        hi_[i] = std::max(hi_[i], exps_[t * nvars_ + i]);
      }
    }
  }

  std::size_t nvars() const { return nvars_; }
  std::uint64_t prime() const { return field_.modulus(); }

  std::uint64_t operator()(const PrimePoint& pt) const {
    if (pt.nvars() != nvars_) throw VariableCountMismatch(nvars_, pt.nvars());
    if (pt.prime() != prime()) throw InvalidArgument("point and polynomial use different primes");
    const ModP& F = field_;
    // table[i][e - lo_i] = x_i^e
    std::vector<std::vector<std::uint64_t>> table(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      auto& row = table[i];
      row.resize(static_cast<std::size_t>(hi_[i] - lo_[i]) + 1);
      const std::uint64_t x = pt[i];
      std::uint64_t v = lo_[i] < 0 ? F.pow(F.inv(x), static_cast<std::uint64_t>(-lo_[i]))
                                   : F.pow(x, static_cast<std::uint64_t>(lo_[i]));
      for (auto& slot : row) {
        slot = v;
        v = F.mul(v, x);
      }
    }
    std::uint64_t acc = 0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      std::uint64_t term = coeffs_[t];
      const Exponent* e = &exps_[t * nvars_];
      for (std::size_t i = 0; i < nvars_; ++i) term = F.mul(term, table[i][static_cast<std::size_t>(e[i] - lo_[i])]);
      acc = F.add(acc, term);
    }
    return acc;
  }

 private:
  ModP field_;
  std::size_t nvars_;
  std::vector<std::uint64_t> coeffs_;
  std::vector<Exponent> exps_;  // row-major, nvars_ per term
  std::vector<Exponent> lo_, hi_;
};

// Value of a Laurent polynomial at a point of (F_p^*)^n.
inline std::uint64_t eval_mod_p(const LaurentPoly& f, const PrimePoint& pt) { return ModpPoly(f, pt.prime())(pt); }

// Rational function prepared for repeated evaluation; nullopt at points
// where the denominator vanishes.
class ModpRatFunc {
 public:
  ModpRatFunc(const RatFunc& f, std::uint64_t prime) : num_(f.num(), prime), den_(f.den(), prime) {}
  std::optional<std::uint64_t> operator()(const PrimePoint& pt) const {
    const std::uint64_t d = den_(pt);
    if (d == 0) return std::nullopt;
    const ModP F(pt.prime());
    return F.mul(num_(pt), F.inv(d));
  }

 private:
  ModpPoly num_, den_;
};

// nullopt signals a degenerate point (denominator vanishes).
inline std::optional<std::uint64_t> eval_mod_p(const RatFunc& f, const PrimePoint& pt) {
  return ModpRatFunc(f, pt.prime())(pt);
}

struct ExactMode {};

struct ModpMode {
  std::uint64_t prime = kDefaultPrime;
  std::size_t trials = 20;
  std::uint64_t rng_seed = 0;
  std::size_t max_resamples = 64;  // per trial
};

using CheckMode = std::variant<ExactMode, ModpMode>;

struct EqualityOutcome {
  bool equal = false;
  std::optional<PrimePoint> witness_point;   // modp mismatch
  std::optional<LaurentPoly> difference;     // exact mismatch: a.num*b.den - b.num*a.den
  std::size_t resamples = 0;

  explicit operator bool() const { return equal; }
};

inline EqualityOutcome equal_exact(const RatFunc& a, const RatFunc& b) {
  if (a.nvars() != b.nvars()) throw VariableCountMismatch(a.nvars(), b.nvars());
  EqualityOutcome out;
  LaurentPoly diff = a.num() * b.den() - b.num() * a.den();
  out.equal = diff.is_zero();
  if (!out.equal) out.difference = std::move(diff);
  return out;
}

// Randomized comparison of two functions given only by pointwise evaluators
// returning nullopt at degenerate points. Degenerate samples are redrawn up
// to mode.max_resamples times per trial.
template <class EvalA, class EvalB>
EqualityOutcome agree_modp(std::size_t nvars, EvalA&& eval_a, EvalB&& eval_b, const ModpMode& mode) {
  if (mode.trials == 0) throw InvalidArgument("trials must be >= 1");
  std::mt19937_64 rng(mode.rng_seed);
  EqualityOutcome out;
  for (std::size_t trial = 0; trial < mode.trials; ++trial) {
    std::size_t attempts = 0;
    while (true) {
      PrimePoint pt = PrimePoint::random(nvars, mode.prime, rng);
      std::optional<std::uint64_t> va = eval_a(pt);
      std::optional<std::uint64_t> vb = va ? eval_b(pt) : std::nullopt;
      if (va && vb) {
        if (*va != *vb) {
          out.witness_point = std::move(pt);
          return out;
        }
        break;
      }
      ++out.resamples;
      if (++attempts > mode.max_resamples) {
        throw RetryBudgetExhausted("no non-degenerate point found after " + std::to_string(attempts) +
                                   " samples");
      }
    }
  }
  out.equal = true;
  return out;
}

inline EqualityOutcome equal_modp(const RatFunc& a, const RatFunc& b, const ModpMode& mode) {
  if (a.nvars() != b.nvars()) throw VariableCountMismatch(a.nvars(), b.nvars());
  const ModpRatFunc fa(a, mode.prime), fb(b, mode.prime);
  return agree_modp(a.nvars(), fa, fb, mode);
}

inline EqualityOutcome equal(const RatFunc& a, const RatFunc& b, const CheckMode& mode) {
  if (const auto* m = std::get_if<ModpMode>(&mode)) return equal_modp(a, b, *m);
  return equal_exact(a, b);
}

}  // namespace lgcluster
