#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lgcluster/exactalg.hpp"

namespace lgcluster {

// Skew-symmetric integer exchange matrix.
class BMatrix {
 public:
  BMatrix() = default;
  explicit BMatrix(std::size_t n) : n_(n), b_(n * n, 0) {}
  BMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
      : BMatrix(std::vector<std::vector<std::int64_t>>(rows.begin(), rows.end())) {}
  explicit BMatrix(const std::vector<std::vector<std::int64_t>>& rows) : n_(rows.size()), b_() {
    b_.reserve(n_ * n_);
    for (const auto& r : rows) {
      if (r.size() != n_) throw InvalidArgument("B-matrix must be square");
      b_.insert(b_.end(), r.begin(), r.end());
    }
    validate();
  }

  std::size_t size() const { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return b_[i * n_ + j]; }

  // Sets b_ij and b_ji = -b_ij together.
  void set(std::size_t i, std::size_t j, std::int64_t v) {
    if (i == j && v != 0) throw InvalidArgument("B-matrix diagonal must be zero");
    b_[i * n_ + j] = v;
    b_[j * n_ + i] = checked_neg(v);
  }

  std::vector<std::vector<std::int64_t>> rows() const {
    std::vector<std::vector<std::int64_t>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i].assign(b_.begin() + i * n_, b_.begin() + (i + 1) * n_);
    return out;
  }

  // Rank over Q by fraction-free (Bareiss) elimination.
  std::size_t rank() const {
    std::vector<std::int64_t> a = b_;
    std::size_t r = 0;
    std::int64_t prev = 1;
    for (std::size_t col = 0; col < n_ && r < n_; ++col) {
      std::size_t piv = r;
      while (piv < n_ && a[piv * n_ + col] == 0) ++piv;
      if (piv == n_) continue;
      for (std::size_t k = 0; k < n_; ++k) std::swap(a[r * n_ + k], a[piv * n_ + k]);
      for (std::size_t i = r + 1; i < n_; ++i) {
        for (std::size_t k = col + 1; k < n_; ++k) {
          a[i * n_ + k] = checked_sub(checked_mul(a[r * n_ + col], a[i * n_ + k]),
                                      checked_mul(a[i * n_ + col], a[r * n_ + k])) /
                          prev;
        }
        a[i * n_ + col] = 0;
      }
      prev = a[r * n_ + col];
      ++r;
    }
    return r;
  }

  friend bool operator==(const BMatrix&, const BMatrix&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if ((*this)(i, j) != -(*this)(j, i)) throw InvalidArgument("B-matrix is not skew-symmetric");
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<std::int64_t> b_;
};

// Matrix mutation at k: the k-th row and column change sign; elsewhere
// b'_ij = b_ij + [b_ik]_+ [b_kj]_+ - [-b_ik]_+ [-b_kj]_+. Involutive.
inline BMatrix bmatrix_mutate(const BMatrix& B, std::size_t k) {
  const std::size_t n = B.size();
  if (k >= n) throw IndexOutOfRange(k, n);
  BMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::int64_t v;
      if (i == k || j == k) {
        v = checked_neg(B(i, j));
      } else {
        v = checked_add(B(i, j), checked_sub(checked_mul(positive_part(B(i, k)), positive_part(B(k, j))),
                                             checked_mul(positive_part(-B(i, k)), positive_part(-B(k, j)))));
      }
      out.set(i, j, v);
    }
  }
  return out;
}

// Arrow multiplicities m_ij = #{arrows i -> j}. No loops, no 2-cycles.
class Quiver {
 public:
  Quiver() = default;
  explicit Quiver(std::size_t n) : n_(n), m_(n * n, 0) {}
  Quiver(std::size_t n, std::vector<std::int64_t> mult) : n_(n), m_(std::move(mult)) {
    if (m_.size() != n_ * n_) throw InvalidArgument("multiplicity table has wrong size");
    for (std::size_t i = 0; i < n_; ++i) {
      if (arrows(i, i) != 0) throw InvalidArgument("quiver has a loop at " + std::to_string(i + 1));
      for (std::size_t j = 0; j < n_; ++j) {
        if (arrows(i, j) < 0) throw InvalidArgument("negative multiplicity");
        if (arrows(i, j) > 0 && arrows(j, i) > 0) {
          throw InvalidArgument("quiver has a 2-cycle between " + std::to_string(i + 1) + " and " +
                                std::to_string(j + 1));
        }
      }
    }
  }

  std::size_t size() const { return n_; }
  std::int64_t arrows(std::size_t i, std::size_t j) const { return m_[i * n_ + j]; }

  std::int64_t arrow_count() const {
    std::int64_t total = 0;
    for (auto v : m_) total = checked_add(total, v);
    return total;
  }

  // b_ij = #(j -> i) - #(i -> j)
  BMatrix to_bmatrix() const {
    BMatrix B(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) B.set(i, j, checked_sub(arrows(j, i), arrows(i, j)));
    }
    return B;
  }

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> m_;
};

// [-b_ij]_+ arrows from i to j.
inline Quiver quiver_from_b(const BMatrix& B) {
  const std::size_t n = B.size();
  std::vector<std::int64_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = positive_part(-B(i, j));
  }
  return {n, std::move(m)};
}

// Quiver mutation at k: compose every path j -> k -> l into a new arrow
// j -> l, reverse the arrows at k, then cancel oriented 2-cycles.
inline Quiver quiver_mutate(const Quiver& Q, std::size_t k) {
  const std::size_t n = Q.size();
  if (k >= n) throw IndexOutOfRange(k, n);
  std::vector<std::int64_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k) {
        m[i * n + j] = Q.arrows(j, i);
      } else {
        m[i * n + j] = checked_add(Q.arrows(i, j), checked_mul(Q.arrows(i, k), Q.arrows(k, j)));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t c = std::min(m[i * n + j], m[j * n + i]);
      m[i * n + j] -= c;
      m[j * n + i] -= c;
    }
  }
  return {n, std::move(m)};
}

// y_i = prod_j x_j^{b_ji}
inline std::vector<Monomial> y_variables(const BMatrix& B) {
  const std::size_t n = B.size();
  std::vector<Monomial> ys;
  ys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Monomial y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = B(j, i);
    ys.push_back(std::move(y));
  }
  return ys;
}

// x_k -> x_k^{-1} prod_j x_j^{[b_kj]_+} (1 + y_k), x_j -> x_j otherwise.
inline std::vector<RatFunc> x_mutation_images(const BMatrix& B, std::size_t k) {
  const std::size_t n = B.size();
  if (k >= n) throw IndexOutOfRange(k, n);
  std::vector<RatFunc> images = identity_images(n);
  Monomial lead(n);
  for (std::size_t j = 0; j < n; ++j) lead[j] = positive_part(B(k, j));
  lead[k] = checked_sub(lead[k], 1);
  const Monomial yk = y_variables(B)[k];
  images[k] = RatFunc(LaurentPoly(lead, 1) + LaurentPoly(lead * yk, 1));
  return images;
}

// Ordered record of x-mutations; step k stores the vertex and the exchange
// matrix of the seed before step k.
class SubstitutionChain {
 public:
  struct Step {
    std::size_t vertex;
    BMatrix before;
  };

  SubstitutionChain() = default;
  explicit SubstitutionChain(std::vector<Step> steps) : steps_(std::move(steps)) {
    for (const auto& s : steps_) {
      if (s.vertex >= s.before.size()) throw IndexOutOfRange(s.vertex, s.before.size());
      if (!steps_.empty() && s.before.size() != steps_.front().before.size()) {
        throw InvalidArgument("chain steps disagree on rank");
      }
    }
  }

  // Chain for mutating along `seq` starting from `initial`.
  static SubstitutionChain along(const BMatrix& initial, const std::vector<std::size_t>& seq) {
    std::vector<Step> steps;
    BMatrix cur = initial;
    for (std::size_t k : seq) {
      steps.push_back({k, cur});
      cur = bmatrix_mutate(cur, k);
    }
    return SubstitutionChain(std::move(steps));
  }

  const std::vector<Step>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }

 private:
  std::vector<Step> steps_;
};

// Exact composite: step k substitutes x_mutation_images(B_k, i_k) into the
// expression produced by step k-1.
inline RatFunc chain_apply(const SubstitutionChain& chain, const RatFunc& f) {
  RatFunc cur = f;
  for (const auto& step : chain.steps()) {
    if (step.before.size() != cur.nvars()) throw VariableCountMismatch(cur.nvars(), step.before.size());
    const auto images = x_mutation_images(step.before, step.vertex);
    cur = substitute(cur, images);
  }
  return cur;
}

// Image of a point under one step's substitution map. nullopt if the new
// coordinate is 0 (the point leaves the torus).
inline std::optional<PrimePoint> x_mutation_point(const BMatrix& B, std::size_t k, const PrimePoint& pt) {
  const std::size_t n = B.size();
  if (pt.nvars() != n) throw VariableCountMismatch(n, pt.nvars());
  const ModP F(pt.prime());
  std::uint64_t lead = F.inv(pt[k]);
  std::uint64_t y = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t b = B(k, j);
    if (b > 0) lead = F.mul(lead, F.pow(pt[j], static_cast<std::uint64_t>(b)));
    const std::int64_t e = B(j, k);  // exponent of x_j in y_k
    if (e > 0) y = F.mul(y, F.pow(pt[j], static_cast<std::uint64_t>(e)));
    else if (e < 0) y = F.mul(y, F.pow(F.inv(pt[j]), static_cast<std::uint64_t>(-e)));
  }
  const std::uint64_t value = F.mul(lead, F.add(1, y));
  if (value == 0) return std::nullopt;
  return pt.with_coord(k, value);
}

// Pointwise composite: the point is pushed through the step maps in reverse
// chain order and the original expression is evaluated there.
// O(chain length * n) field operations plus one evaluation of f.
inline std::optional<std::uint64_t> chain_eval(const SubstitutionChain& chain, const RatFunc& f,
                                               const PrimePoint& pt) {
  std::optional<PrimePoint> cur = pt;
  const auto& steps = chain.steps();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    cur = x_mutation_point(it->before, it->vertex, *cur);
    if (!cur) return std::nullopt;
  }
  return eval_mod_p(f, *cur);
}

// y-seed: exchange matrix plus y-values (rational functions in any ambient
// variables).
struct YSeed {
  BMatrix B;
  std::vector<RatFunc> y;
  friend bool operator==(const YSeed&, const YSeed&) = default;
};

// y_k' = y_k^{-1}, y_j' = y_j y_k^{[b_kj]_+} (1 + y_k)^{-b_kj}; B mutates
// alongside. Involutive.
inline YSeed y_mutate(const YSeed& s, std::size_t k) {
  const std::size_t n = s.B.size();
  if (k >= n) throw IndexOutOfRange(k, n);
  if (s.y.size() != n) throw VariableCountMismatch(n, s.y.size());
  const RatFunc& yk = s.y[k];
  const RatFunc one_plus = RatFunc(LaurentPoly::one(yk.nvars())) + yk;
  YSeed out{bmatrix_mutate(s.B, k), {}};
  out.y.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) {
      out.y.push_back(yk.inverse());
      continue;
    }
    const std::int64_t b = s.B(k, j);
    out.y.push_back(s.y[j] * pow(yk, positive_part(b)) * pow(one_plus, checked_neg(b)));
  }
  return out;
}

}  // namespace lgcluster
