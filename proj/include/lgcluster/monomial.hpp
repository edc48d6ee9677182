#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "lgcluster/checked.hpp"

namespace lgcluster {

// Exponent vector of a Laurent monomial x_1^{e_1} ... x_n^{e_n}.
// Ordered lexicographically; this is a group order on Z^n.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<Exponent> exps) : exps_(exps) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  static Monomial unit(std::size_t nvars, std::size_t var, Exponent e = 1) {
    Monomial m(nvars);
    m.exps_.at(var) = e;
    return m;
  }

  std::size_t nvars() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  std::span<const Exponent> exponents() const { return exps_; }

  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e >= 0; });
  }

  Monomial& operator*=(const Monomial& o) {
    check_same(o);
    for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] = checked_add(exps_[i], o.exps_[i]);
    return *this;
  }
  Monomial& operator/=(const Monomial& o) {
    check_same(o);
    for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] = checked_sub(exps_[i], o.exps_[i]);
    return *this;
  }
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  friend Monomial operator/(Monomial a, const Monomial& b) { return a /= b; }

  Monomial pow(Exponent k) const {
    Monomial r(*this);
    for (auto& e : r.exps_) e = checked_mul(e, k);
    return r;
  }
  Monomial inverse() const { return pow(-1); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    return a.exps_ <=> b.exps_;
  }

 private:
  void check_same(const Monomial& o) const {
    if (o.exps_.size() != exps_.size()) throw VariableCountMismatch(exps_.size(), o.exps_.size());
  }

  std::vector<Exponent> exps_;
};

}  // namespace lgcluster
