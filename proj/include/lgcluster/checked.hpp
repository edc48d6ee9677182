#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "lgcluster/errors.hpp"

namespace lgcluster {

// Coefficients are unbounded: iterated mutations of the del Pezzo potentials
// leave int64 after four or five steps. Exponents stay machine integers and
// are overflow-checked.
using Coeff = boost::multiprecision::cpp_int;
using Exponent = std::int64_t;

// Overflow-checked 64-bit arithmetic. Results never wrap silently.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

inline std::int64_t positive_part(std::int64_t a) { return a > 0 ? a : 0; }

inline std::int64_t abs_gcd(std::int64_t a, std::int64_t b) {
  if (a == INT64_MIN || b == INT64_MIN) throw OverflowError("gcd of INT64_MIN");
  return std::gcd(a, b);
}

// Coefficient overloads. Arbitrary precision, so these cannot overflow; they
// exist so that generic code reads the same for both integer kinds.
inline Coeff checked_add(const Coeff& a, const Coeff& b) { return a + b; }
inline Coeff checked_sub(const Coeff& a, const Coeff& b) { return a - b; }
inline Coeff checked_mul(const Coeff& a, const Coeff& b) { return a * b; }
inline Coeff checked_neg(const Coeff& a) { return -a; }
inline Coeff abs_gcd(const Coeff& a, const Coeff& b) { return boost::multiprecision::gcd(a, b); }

inline std::string to_string(const Coeff& c) { return c.str(); }

// Narrowing for places that need a machine integer (exponents of powers).
inline std::int64_t to_int64(const Coeff& c) {
  if (c > INT64_MAX || c < INT64_MIN) throw OverflowError("coefficient does not fit in 64 bits");
  return static_cast<std::int64_t>(c);
}

}  // namespace lgcluster
