#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lgcluster/clusterkit.hpp"
#include "lgcluster/lgseed.hpp"
#include "lgcluster/repchar.hpp"

namespace lgcluster {

// b_ij = {v_i, v_j}. Rank is at most two since the directions live in Z^2.
inline BMatrix b_from_seed(const LGSeed& s) {
  BMatrix B(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) B.set(i, j, symplectic(s.direction(i), s.direction(j)));
  }
  assert(B.rank() <= 2);
  return B;
}

// Monomial map z^v -> prod_i x_i^{-(v, v_i)} from the two-variable Laurent
// ring to the Laurent ring in one variable per seed direction.
class ComparisonMap {
 public:
  explicit ComparisonMap(std::vector<Direction> directions) : dirs_(std::move(directions)) {}
  explicit ComparisonMap(const LGSeed& s) : dirs_(s.directions()) {}

  std::size_t size() const { return dirs_.size(); }

  Monomial image(Vec2 v) const {
    Monomial m(dirs_.size());
    for (std::size_t i = 0; i < dirs_.size(); ++i) m[i] = checked_neg(scalar(v, dirs_[i].vec()));
    return m;
  }

  LaurentPoly operator()(const LaurentPoly& f) const {
    if (f.nvars() != 2) throw VariableCountMismatch(2, f.nvars());
    LaurentPoly out(dirs_.size());
    for (const auto& [m, c] : f.terms()) out.add_term(image(Vec2{m[0], m[1]}), c);
    return out;
  }

  // Numerator and denominator separately; well defined because the map is
  // multiplicative on monomials.
  RatFunc operator()(const RatFunc& f) const { return {(*this)(f.num()), (*this)(f.den())}; }

 private:
  std::vector<Direction> dirs_;
};

inline LaurentPoly phi(const LGSeed& s, const LaurentPoly& f) { return ComparisonMap(s)(f); }
inline RatFunc phi(const LGSeed& s, const RatFunc& f) { return ComparisonMap(s)(f); }

// Outcome of one verification. A failed report always carries a witness.
struct VerificationReport {
  std::string check{};
  std::optional<Surface> surface{};
  std::vector<std::size_t> sequence{};  // 0-based
  std::optional<std::size_t> direction{};
  CheckMode mode = ExactMode{};
  bool passed = false;
  std::string witness{};
  std::string note{};
  std::int64_t millis = 0;

  void fail(std::string why) {
    passed = false;
    witness = why.empty() ? std::string("unspecified mismatch") : std::move(why);
  }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::string describe(const EqualityOutcome& eq, std::string_view var = "x") {
  if (eq.witness_point) return "values differ at " + eq.witness_point->to_string();
  if (eq.difference) return "nonzero difference " + eq.difference->to_string(var);
  return "";
}

}  // namespace detail

// B(mu_i s) against mu_i B(s), entrywise.
inline VerificationReport check_b_compat(const LGSeed& s, std::size_t i) {
  detail::Stopwatch clock;
  VerificationReport r{.check = "bmat", .direction = i};
  const BMatrix via_seed = b_from_seed(seed_mutate(s, i));
  const BMatrix via_matrix = bmatrix_mutate(b_from_seed(s), i);
  r.passed = via_seed == via_matrix;
  if (!r.passed) r.fail("B(mu s) = " + via_seed.to_string() + " but mu B(s) = " + via_matrix.to_string());
  r.millis = clock.millis();
  return r;
}

// mu_i^C(Phi_s(z^v)) against Phi_{mu_i s}(mu_{v_i}(z^v)) for each test vector.
inline VerificationReport check_phi_compat(const LGSeed& s, std::size_t i, const std::vector<Vec2>& vectors,
                                           const CheckMode& mode = ExactMode{}) {
  detail::Stopwatch clock;
  VerificationReport r{.check = "compat", .direction = i, .mode = mode};
  const LGSeed mutated = seed_mutate(s, i);
  const ComparisonMap before(s), after(mutated);
  const auto images = x_mutation_images(b_from_seed(s), i);
  r.passed = true;
  for (const Vec2& v : vectors) {
    const RatFunc lhs = substitute(LaurentPoly(before.image(v), 1), images);
    const RatFunc rhs = after(monomial_mutate(s.direction(i), v));
    const EqualityOutcome eq = equal(lhs, rhs, mode);
    if (!eq) {
      r.fail("v = " + v.to_string() + ": " + detail::describe(eq));
      break;
    }
  }
  r.millis = clock.millis();
  return r;
}

// CC_{P(X)} = Phi_{s(X)}(W(X)), exactly.
inline VerificationReport check_initial_identity(Surface x) {
  detail::Stopwatch clock;
  VerificationReport r{.check = "initial", .surface = x};
  const LGSeed s = initial_seed(x);
  const VirtualCharData d = virtual_char_data(x);
  const LaurentPoly cc = cluster_character(d.g, d.f_poly, b_from_seed(s));
  const LaurentPoly image = phi(s, s.potential());
  r.passed = cc == image;
  if (!r.passed) r.fail("CC = " + cc.to_string("x") + " but Phi(W) = " + image.to_string("x"));
  r.millis = clock.millis();
  return r;
}

// Phi_{s_i}(W_i) against the x-mutation chain applied to Phi_s(W). Together
// with the initial identity this certifies Phi_{s_i}(W_i) = CC_{P_i}, the
// right side being reached through mutation invariance of characters.
// `mutated` must be iterate(initial_seed(x), seq); callers walking many
// sequences pass it in to share prefixes.
inline VerificationReport verify_main(Surface x, const std::vector<std::size_t>& seq, const LGSeed& mutated,
                                      const CheckMode& mode) {
  detail::Stopwatch clock;
  VerificationReport r{.check = "main", .surface = x, .sequence = seq, .mode = mode};
  r.note = "verified via invariance route";
  const LGSeed s0 = initial_seed(x);
  const LaurentPoly lhs = phi(mutated, mutated.potential());
  const LaurentPoly start = phi(s0, s0.potential());
  const SubstitutionChain chain = SubstitutionChain::along(b_from_seed(s0), seq);
  EqualityOutcome eq;
  if (const auto* m = std::get_if<ModpMode>(&mode)) {
    const RatFunc start_rf(start);
    const ModpPoly lhs_at(lhs, m->prime);
    eq = agree_modp(
        s0.size(), [&](const PrimePoint& pt) { return std::optional<std::uint64_t>(lhs_at(pt)); },
        [&](const PrimePoint& pt) { return chain_eval(chain, start_rf, pt); }, *m);
  } else {
    eq = equal_exact(RatFunc(lhs), chain_apply(chain, RatFunc(start)));
  }
  r.passed = eq.equal;
  if (!r.passed) r.fail(detail::describe(eq));
  r.millis = clock.millis();
  return r;
}

inline VerificationReport verify_main(Surface x, const std::vector<std::size_t>& seq, const CheckMode& mode,
                                      RepetitionPolicy policy = RepetitionPolicy::Reject) {
  detail::Stopwatch clock;
  const LGSeed mutated = iterate(initial_seed(x), seq, policy);
  VerificationReport r = verify_main(x, seq, mutated, mode);
  r.millis = clock.millis();
  return r;
}

// verify_main on `prefix` and on every repetition-free extension of it up to
// length max_len, depth first, each seed computed from its parent.
inline std::vector<VerificationReport> verify_main_subtree(Surface x, const std::vector<std::size_t>& prefix,
                                                           std::size_t max_len, const CheckMode& mode) {
  std::vector<VerificationReport> out;
  std::vector<std::size_t> seq = prefix;
  const LGSeed root = iterate(initial_seed(x), prefix);
  std::vector<bool> used(root.size(), false);
  for (auto i : prefix) used[i] = true;
  auto rec = [&](auto&& self, const LGSeed& s) -> void {
    out.push_back(verify_main(x, seq, s, mode));
    if (seq.size() >= max_len) return;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      seq.push_back(i);
      const LGSeed child = [&] {
        try {
          return seed_mutate(s, i);
        } catch (const NotLaurent&) {
          throw NotLaurent(i, seq.size() - 1);
        }
      }();
      self(self, child);
      seq.pop_back();
      used[i] = false;
    }
  };
  rec(rec, root);
  return out;
}

struct MarkovTriple {
  std::int64_t a, b, c;  // sorted ascending
  friend auto operator<=>(const MarkovTriple&, const MarkovTriple&) = default;
  std::string to_string() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }
};

inline bool is_markov(const MarkovTriple& t) {
  const auto lhs = checked_add(checked_add(checked_mul(t.a, t.a), checked_mul(t.b, t.b)), checked_mul(t.c, t.c));
  return lhs == checked_mul(3, checked_mul(t.a, checked_mul(t.b, t.c)));
}

// A 3x3 exchange matrix whose quiver is an oriented triangle with 3a, 3b, 3c
// parallel arrows, (a,b,c) a Markov triple.
inline std::optional<MarkovTriple> markov_extract(const BMatrix& B) {
  if (B.size() != 3) return std::nullopt;
  const std::array<std::int64_t, 3> e = {B(0, 1), B(1, 2), B(2, 0)};
  const bool cyclic = (e[0] > 0 && e[1] > 0 && e[2] > 0) || (e[0] < 0 && e[1] < 0 && e[2] < 0);
  if (!cyclic) return std::nullopt;
  std::array<std::int64_t, 3> t{};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::int64_t m = e[k] < 0 ? checked_neg(e[k]) : e[k];
    if (m % 3 != 0) return std::nullopt;
    t[k] = m / 3;
  }
  std::sort(t.begin(), t.end());
  MarkovTriple out{t[0], t[1], t[2]};
  if (!is_markov(out)) return std::nullopt;
  return out;
}

struct MarkovSearch {
  std::set<MarkovTriple> triples;
  std::vector<BMatrix> rejected;  // matrices that failed markov_extract
};

// Breadth-first search over mutations of `start` up to `depth` steps,
// deduplicating matrices; every visited matrix is passed to markov_extract.
inline MarkovSearch markov_bfs(const BMatrix& start, std::size_t depth) {
  MarkovSearch out;
  std::set<std::vector<std::vector<std::int64_t>>> seen{start.rows()};
  std::vector<BMatrix> frontier{start};
  for (std::size_t d = 0;; ++d) {
    for (const auto& B : frontier) {
      if (auto t = markov_extract(B)) out.triples.insert(*t);
      else out.rejected.push_back(B);
    }
    if (d == depth) break;
    std::vector<BMatrix> next;
    for (const auto& B : frontier) {
      for (std::size_t k = 0; k < B.size(); ++k) {
        BMatrix m = bmatrix_mutate(B, k);
        if (seen.insert(m.rows()).second) next.push_back(std::move(m));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace lgcluster
