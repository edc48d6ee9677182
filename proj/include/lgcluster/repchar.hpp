#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lgcluster/clusterkit.hpp"
#include "lgcluster/lgseed.hpp"

namespace lgcluster {

// Exchange matrices of the five del Pezzo quivers, as literal data.
inline BMatrix standard_bmatrix(Surface x) {
  switch (x) {
    case Surface::CP2:
      return {{0, 3, -3}, {-3, 0, 3}, {3, -3, 0}};
    case Surface::CP1xCP1:
      return {{0, -2, 2, 0}, {2, 0, 0, -2}, {-2, 0, 0, 2}, {0, 2, -2, 0}};
    case Surface::Bl1CP2:
      return {{0, 3, -1, -2}, {-3, 0, 2, 1}, {1, -2, 0, 1}, {2, -1, -1, 0}};
    case Surface::Bl2CP2:
      return {{0, 0, -1, -1, 2}, {0, 0, 1, 1, -2}, {1, -1, 0, 1, -1}, {1, -1, -1, 0, 1}, {-2, 2, 1, -1, 0}};
    case Surface::Bl3CP2:
      return {{0, 0, 1, -1, 1, -1}, {0, 0, -1, 1, -1, 1}, {-1, 1, 0, 0, 1, -1},
              {1, -1, 0, 0, -1, 1}, {-1, 1, -1, 1, 0, 0}, {1, -1, 1, -1, 0, 0}};
  }
  throw InvalidArgument("unknown surface");
}

// Representation with V_base = 0 and V_i = C elsewhere. Each arrow class
// i -> j (all parallel arrows together) is either zero or carries generic
// nonzero scalars:
//   - classes incident to the base vertex are zero;
//   - a class i -> j bypassing the base (arrows i -> base -> j exist) is zero;
//   - every other class is nonzero.
class ThinRep {
 public:
  ThinRep(Quiver q, std::size_t base) : quiver_(std::move(q)), base_(base) {
    const std::size_t n = quiver_.size();
    if (base_ >= n) throw IndexOutOfRange(base_, n);
    nonzero_.assign(n * n, false);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (quiver_.arrows(i, j) == 0 || i == base_ || j == base_) continue;
        const bool bypass = quiver_.arrows(i, base_) > 0 && quiver_.arrows(base_, j) > 0;
        nonzero_[i * n + j] = !bypass;
      }
    }
  }

  const Quiver& quiver() const { return quiver_; }
  std::size_t base() const { return base_; }
  std::size_t size() const { return quiver_.size(); }
  int dim(std::size_t i) const { return i == base_ ? 0 : 1; }
  bool nonzero(std::size_t i, std::size_t j) const { return nonzero_[i * size() + j]; }

  // Arrow classes (i, j) carrying nonzero maps, in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> nonzero_classes() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (nonzero(i, j)) out.emplace_back(i, j);
      }
    }
    return out;
  }

 private:
  Quiver quiver_;
  std::size_t base_;
  std::vector<bool> nonzero_;
};

inline ThinRep initial_rep(Surface x, std::size_t base = 0) {
  return {quiver_from_b(standard_bmatrix(x)), base};
}

// Vertex subsets closed under nonzero arrows, as bitmasks. For a thin
// representation these are exactly the subrepresentations, each contributing
// a single point to its quiver Grassmannian.
inline std::vector<std::uint64_t> closed_subsets(const ThinRep& R) {
  const std::size_t n = R.size();
  if (n >= 63) throw InvalidArgument("too many vertices for subset enumeration");
  std::vector<std::uint64_t> succ(n, 0);
  for (auto [i, j] : R.nonzero_classes()) succ[i] |= std::uint64_t{1} << j;
  const std::uint64_t support = ((std::uint64_t{1} << n) - 1) & ~(std::uint64_t{1} << R.base());
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if ((s & ~support) != 0) continue;
    bool closed = true;
    for (std::size_t i = 0; i < n && closed; ++i) {
      if (((s >> i) & 1U) != 0U) closed = (succ[i] & ~s) == 0;
    }
    if (closed) out.push_back(s);
  }
  return out;
}

// F_V(u) = sum over closed subsets S of prod_{i in S} u_i.
inline LaurentPoly f_polynomial(const ThinRep& R) {
  const std::size_t n = R.size();
  LaurentPoly F(n);
  for (std::uint64_t s : closed_subsets(R)) {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = (s >> i) & 1U;
    F.add_term(m, 1);
  }
  return F;
}

// h_i = -dim Ker(beta_i): -1 exactly when V_i = C and no nonzero class leaves i.
inline std::vector<std::int64_t> h_vector(const ThinRep& R) {
  const std::size_t n = R.size();
  std::vector<std::int64_t> h(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (R.dim(i) == 0) continue;
    bool injective = false;
    for (std::size_t j = 0; j < n && !injective; ++j) injective = R.nonzero(i, j);
    h[i] = injective ? 0 : -1;
  }
  return h;
}

// g-vectors of the virtual representations P(X) = [V] - [(S_1^-)^c] with
// base vertex 1. The base entry is -1 because c = dim Ker(gamma_1) + 1.
// Entries away from the base are dim Ker(gamma_i) - 1 for the generic
// representation; for CP2 that is (gamma_2 = 0 on V_1^3 = 0,
// gamma_3 = 0 on V_2^3 = C^3). For Bl3 the value is the unique candidate
// g = (exponent of a term x1^-1... of Phi(W)) whose character reproduces
// Phi(W); the search is repeated in the tests.
inline std::vector<std::int64_t> g_vector(Surface x) {
  switch (x) {
    case Surface::CP2: return {-1, -1, 2};
    case Surface::CP1xCP1: return {-1, 1, -1, 1};
    case Surface::Bl1CP2: return {-1, -1, 1, 1};
    case Surface::Bl2CP2: return {-1, 1, 1, 0, -1};
    case Surface::Bl3CP2: return {-1, 1, -1, 1, 0, 0};
  }
  throw InvalidArgument("unknown surface");
}

// F-polynomial and g-vector of a (virtual) representation.
struct VirtualCharData {
  LaurentPoly f_poly;
  std::vector<std::int64_t> g;

  // Throws InvalidArgument if F is not a polynomial with constant term 1 and
  // positive integer coefficients.
  void validate() const {
    if (g.size() != f_poly.nvars()) throw VariableCountMismatch(f_poly.nvars(), g.size());
    if (f_poly.constant_term() != 1) throw InvalidArgument("F-polynomial must have constant term 1");
    for (const auto& [m, c] : f_poly.terms()) {
      if (c <= 0) throw InvalidArgument("F-polynomial coefficients must be positive");
      if (!m.is_nonnegative()) throw InvalidArgument("F-polynomial must not have negative exponents");
    }
  }
};

inline VirtualCharData virtual_char_data(Surface x) {
  VirtualCharData d{f_polynomial(initial_rep(x)), g_vector(x)};
  d.validate();
  return d;
}

// CC(x) = x^g F(y), y_i = prod_j x_j^{b_ji}.
inline LaurentPoly cluster_character(const std::vector<std::int64_t>& g, const LaurentPoly& F, const BMatrix& B) {
  const std::size_t n = B.size();
  if (g.size() != n) throw VariableCountMismatch(n, g.size());
  if (F.nvars() != n) throw VariableCountMismatch(n, F.nvars());
  const auto ys = y_variables(B);
  const Monomial xg(std::vector<Exponent>(g.begin(), g.end()));
  LaurentPoly cc(n);
  for (const auto& [e, c] : F.terms()) {
    if (!e.is_nonnegative()) throw InvalidArgument("F must have nonnegative exponents");
    Monomial m = xg;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] != 0) m *= ys[i].pow(e[i]);
    }
    cc.add_term(m, c);
  }
  return cc;
}

// g_k(mu_k V) = -g_k(V); g_j(mu_k V) = g_j(V) + [b_jk]_+ g_k(V) - b_jk h_k(V).
inline std::vector<std::int64_t> g_mutate(const BMatrix& B, const std::vector<std::int64_t>& g, std::int64_t h_k,
                                          std::size_t k) {
  const std::size_t n = B.size();
  if (k >= n) throw IndexOutOfRange(k, n);
  if (g.size() != n) throw VariableCountMismatch(n, g.size());
  std::vector<std::int64_t> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) {
      out[j] = checked_neg(g[k]);
    } else {
      out[j] = checked_sub(checked_add(g[j], checked_mul(positive_part(B(j, k)), g[k])), checked_mul(B(j, k), h_k));
    }
  }
  return out;
}

struct FMutationCheck {
  bool passed = false;
  std::optional<LaurentPoly> mutated_f;  // F_{mu_k V}(u) when it is a polynomial
  std::optional<LaurentPoly> remainder;  // set when the quotient is not Laurent
  std::int64_t h_after = 0;              // h_k(mu_k V) = h_k(V) - g_k(V)
  std::string failure;
};

// Solves (1 + y_k)^{h_k(V)} F_V(y) = (1 + y'_k)^{h_k(mu_k V)} F_{mu_k V}(y')
// for F_{mu_k V} with h_k(mu_k V) = h_k(V) - g_k(V). The y are formal
// variables u_1..u_n; y is expressed through y' by mutating the y-seed
// (mu_k B, u) at k. Passes iff the result is a polynomial with nonnegative
// exponents, positive integer coefficients and constant term 1.
inline FMutationCheck f_mutation_check(const BMatrix& B, const LaurentPoly& F, const std::vector<std::int64_t>& g,
                                       const std::vector<std::int64_t>& h, std::size_t k) {
  const std::size_t n = B.size();
  if (k >= n) throw IndexOutOfRange(k, n);
  if (F.nvars() != n) throw VariableCountMismatch(n, F.nvars());
  if (g.size() != n) throw VariableCountMismatch(n, g.size());
  if (h.size() != n) throw VariableCountMismatch(n, h.size());

  FMutationCheck out;
  out.h_after = checked_sub(h[k], g[k]);

  const YSeed primed{bmatrix_mutate(B, k), identity_images(n)};
  const YSeed original = y_mutate(primed, k);  // y in terms of y' = u
  const RatFunc one = RatFunc(LaurentPoly::one(n));
  const RatFunc f_of_y = substitute(F, original.y);
  const RatFunc lhs = pow(one + original.y[k], h[k]) * f_of_y;
  const RatFunc mutated = lhs * pow(one + RatFunc(LaurentPoly::variable(n, k)), checked_neg(out.h_after));

  auto [q, r] = divide(mutated.num(), mutated.den());
  if (!r.is_zero()) {
    out.remainder = std::move(r);
    out.failure = "mutated F is not a Laurent polynomial: " + mutated.to_string("u");
    return out;
  }
  for (const auto& [m, c] : q.terms()) {
    if (!m.is_nonnegative()) {
      out.failure = "mutated F has a negative exponent: " + q.to_string("u");
      return out;
    }
    if (c <= 0) {
      out.failure = "mutated F has a non-positive coefficient: " + q.to_string("u");
      return out;
    }
  }
  if (q.constant_term() != 1) {
    out.failure = "mutated F has constant term " + to_string(q.constant_term()) + ": " + q.to_string("u");
    return out;
  }
  out.mutated_f = std::move(q);
  out.passed = true;
  return out;
}

}  // namespace lgcluster
