#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgcluster/exactalg.hpp"

namespace lgcluster {

// Integer vector in Z^2 (exponent of z^w, direction, ...).
struct Vec2 {
  Exponent a = 0;
  Exponent b = 0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
  Vec2 operator-() const { return {checked_neg(a), checked_neg(b)}; }
  friend Vec2 operator+(Vec2 x, Vec2 y) { return {checked_add(x.a, y.a), checked_add(x.b, y.b)}; }
  friend Vec2 operator*(Exponent k, Vec2 x) { return {checked_mul(k, x.a), checked_mul(k, x.b)}; }

  Monomial monomial() const { return Monomial{a, b}; }
  std::string to_string() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
};

inline bool is_primitive(Vec2 v) { return !(v.a == 0 && v.b == 0) && abs_gcd(v.a, v.b) == 1; }

// Primitive nonzero vector of Z^2.
class Direction {
 public:
  Direction(Exponent a, Exponent b) : v_{a, b} {
    if (!is_primitive(v_)) throw InvalidArgument("direction " + v_.to_string() + " is not primitive");
  }
  explicit Direction(Vec2 v) : Direction(v.a, v.b) {}

  Vec2 vec() const { return v_; }
  Exponent a() const { return v_.a; }
  Exponent b() const { return v_.b; }
  Direction operator-() const { return Direction(-v_); }
  operator Vec2() const { return v_; }  // NOLINT(google-explicit-constructor)

  friend bool operator==(const Direction&, const Direction&) = default;
  std::string to_string() const { return v_.to_string(); }

 private:
  Vec2 v_;
};

// (a,b) -> (b,-a)
inline Vec2 perp(Vec2 v) { return {v.b, checked_neg(v.a)}; }
inline Direction perp(Direction v) { return Direction(perp(v.vec())); }

// (v,w) = ac + bd
inline Exponent scalar(Vec2 v, Vec2 w) { return checked_add(checked_mul(v.a, w.a), checked_mul(v.b, w.b)); }

// {v,w} = ad - bc = -(v^perp, w)
inline Exponent symplectic(Vec2 v, Vec2 w) {
  return checked_sub(checked_mul(v.a, w.b), checked_mul(v.b, w.a));
}

// mu_v w = w + [{w,v}]_+ v
inline Vec2 tropical_mutate(Direction v, Vec2 w) { return w + positive_part(symplectic(w, v)) * v.vec(); }

// 1 + z^{v^perp}
inline LaurentPoly mutation_binomial(Direction v) {
  return LaurentPoly::one(2) + LaurentPoly(perp(v.vec()).monomial(), 1);
}

// mu_v(z^w) = z^w (1 + z^{v^perp})^{-(v,w)}
inline RatFunc monomial_mutate(Direction v, Vec2 w) {
  const RatFunc twist = pow(mutation_binomial(v), checked_neg(scalar(v, w)));
  return RatFunc(LaurentPoly(w.monomial(), 1)) * twist;
}

// Images of (z1, z2) under mu_v: z1 (1+z^{v^perp})^{-a}, z2 (1+z^{v^perp})^{-b}.
inline std::array<RatFunc, 2> mutation_images(Direction v) {
  const LaurentPoly binom = mutation_binomial(v);
  return {RatFunc(LaurentPoly::variable(2, 0)) * pow(binom, checked_neg(v.a())),
          RatFunc(LaurentPoly::variable(2, 1)) * pow(binom, checked_neg(v.b()))};
}

// mu_v applied to an arbitrary rational function by substitution.
inline RatFunc mutate_function(Direction v, const RatFunc& f) {
  const auto images = mutation_images(v);
  return substitute(f, images);
}

// mu_v W via the per-monomial rule. Every term is brought over
// (1 + z^{v^perp})^M, M = max(0, max (v,w)), and the numerator is divided
// exactly. nullopt if the result is not a Laurent polynomial.
inline std::optional<LaurentPoly> mutate_potential(const LaurentPoly& w, Direction v) {
  if (w.nvars() != 2) throw VariableCountMismatch(2, w.nvars());
  const LaurentPoly binom = mutation_binomial(v);
  Exponent top = 0;
  for (const auto& [m, c] : w.terms()) top = std::max(top, scalar(v, Vec2{m[0], m[1]}));
  detail::PowerCache powers(binom);
  LaurentPoly numerator(2);
  for (const auto& [m, c] : w.terms()) {
    const Exponent k = checked_sub(top, scalar(v, Vec2{m[0], m[1]}));
    numerator.add_scaled(powers.get(static_cast<std::size_t>(k)), c, m);
  }
  if (top == 0) return numerator;
  return exact_div(numerator, powers.get(static_cast<std::size_t>(top)));
}

// Potential plus ordered primitive directions. Distinctness of the
// directions is not enforced: mutation does not preserve it (CP1xCP1 at 1
// sends v_1 to -v_1 = v_4), so it is only checked where seeds are written
// down by hand, see distinct_directions.
class LGSeed {
 public:
  LGSeed(LaurentPoly potential, std::vector<Direction> directions)
      : potential_(std::move(potential)), directions_(std::move(directions)) {
    if (potential_.nvars() != 2) throw VariableCountMismatch(2, potential_.nvars());
  }

  // First pair (i, j), i < j, with v_i = v_j.
  std::optional<std::pair<std::size_t, std::size_t>> coinciding_directions() const {
    for (std::size_t i = 0; i < directions_.size(); ++i) {
      for (std::size_t j = i + 1; j < directions_.size(); ++j) {
        if (directions_[i] == directions_[j]) return std::pair{i, j};
      }
    }
    return std::nullopt;
  }
  bool distinct_directions() const { return !coinciding_directions(); }

  const LaurentPoly& potential() const { return potential_; }
  const std::vector<Direction>& directions() const { return directions_; }
  const Direction& direction(std::size_t i) const { return directions_.at(i); }
  std::size_t size() const { return directions_.size(); }

  friend bool operator==(const LGSeed&, const LGSeed&) = default;

 private:
  LaurentPoly potential_;
  std::vector<Direction> directions_;
};

// Directions after mutating in direction i: v_i -> -v_i, v_j -> mu_{v_i} v_j.
inline std::vector<Direction> mutate_directions(const std::vector<Direction>& dirs, std::size_t i) {
  if (i >= dirs.size()) throw IndexOutOfRange(i, dirs.size());
  std::vector<Direction> out;
  out.reserve(dirs.size());
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    out.push_back(j == i ? -dirs[i] : Direction(tropical_mutate(dirs[i], dirs[j].vec())));
  }
  return out;
}

// Seed mutation in direction i (0-based). Throws NotLaurent when mu_{v_i} W
// leaves the Laurent ring.
inline LGSeed seed_mutate(const LGSeed& s, std::size_t i) {
  if (i >= s.size()) throw IndexOutOfRange(i, s.size());
  auto w = mutate_potential(s.potential(), s.direction(i));
  if (!w) throw NotLaurent(i, 0);
  return {std::move(*w), mutate_directions(s.directions(), i)};
}

enum class Surface { CP2, CP1xCP1, Bl1CP2, Bl2CP2, Bl3CP2 };

inline constexpr std::array<Surface, 5> kAllSurfaces = {Surface::CP2, Surface::CP1xCP1, Surface::Bl1CP2,
                                                         Surface::Bl2CP2, Surface::Bl3CP2};

inline std::string_view surface_name(Surface x) {
  switch (x) {
    case Surface::CP2: return "CP2";
    case Surface::CP1xCP1: return "CP1xCP1";
    case Surface::Bl1CP2: return "Bl1CP2";
    case Surface::Bl2CP2: return "Bl2CP2";
    case Surface::Bl3CP2: return "Bl3CP2";
  }
  return "?";
}

// Case-insensitive; accepts the canonical names and the short forms
// "bl1".."bl3", "p2", "p1xp1".
inline std::optional<Surface> parse_surface(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != '_' && c != '-' && c != ' ') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (s == "cp2" || s == "p2") return Surface::CP2;
  if (s == "cp1xcp1" || s == "p1xp1") return Surface::CP1xCP1;
  if (s == "bl1cp2" || s == "bl1") return Surface::Bl1CP2;
  if (s == "bl2cp2" || s == "bl2") return Surface::Bl2CP2;
  if (s == "bl3cp2" || s == "bl3") return Surface::Bl3CP2;
  return std::nullopt;
}

// The toric del Pezzo LG seeds. Direction order is chosen so that
// b_ij = {v_i, v_j} gives the standard exchange matrices of the five quivers.
inline LGSeed initial_seed(Surface x) {
  auto W = [](std::string_view text) { return parse_laurent(text, 2); };
  switch (x) {
    case Surface::CP2:
      return {W("z1 + z2 + z1^-1*z2^-1"), {{1, 1}, {-2, 1}, {1, -2}}};
    case Surface::CP1xCP1:
      return {W("z1 + z2 + z1^-1 + z2^-1"), {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    case Surface::Bl1CP2:
      return {W("z1 + z2 + z1^-1*z2^-1 + z1*z2"), {{-2, 1}, {1, -2}, {1, 0}, {0, 1}}};
    case Surface::Bl2CP2:
      return {W("z1 + z2 + z1^-1 + z2^-1 + z1^-1*z2^-1"), {{1, -1}, {-1, 1}, {-1, 0}, {0, -1}, {1, 1}}};
    case Surface::Bl3CP2:
      return {W("z1 + z2 + z1^-1 + z2^-1 + z1*z2 + z1^-1*z2^-1"),
              {{1, -1}, {-1, 1}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  }
  throw InvalidArgument("unknown surface");
}

enum class RepetitionPolicy { Reject, Allow };

// Throws RepetitionRejected / IndexOutOfRange for an inadmissible sequence.
inline void validate_sequence(std::size_t n, const std::vector<std::size_t>& seq, RepetitionPolicy policy) {
  std::vector<bool> seen(n, false);
  for (std::size_t i : seq) {
    if (i >= n) throw IndexOutOfRange(i, n);
    if (policy == RepetitionPolicy::Reject && seen[i]) throw RepetitionRejected(i);
    seen[i] = true;
  }
}

// mu_{i_N} ... mu_{i_1} s, applied left to right. Indices are 0-based.
inline LGSeed iterate(const LGSeed& s, const std::vector<std::size_t>& seq,
                      RepetitionPolicy policy = RepetitionPolicy::Reject) {
  validate_sequence(s.size(), seq, policy);
  LGSeed cur = s;
  for (std::size_t step = 0; step < seq.size(); ++step) {
    try {
      cur = seed_mutate(cur, seq[step]);
    } catch (const NotLaurent&) {
      throw NotLaurent(seq[step], step);
    }
  }
  return cur;
}

// All repetition-free sequences over {0..n-1} of length <= max_len,
// including the empty one, in depth-first order (a prefix precedes its
// extensions).
inline std::vector<std::vector<std::size_t>> repetition_free_sequences(std::size_t n, std::size_t max_len) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> void {
    out.push_back(cur);
    if (cur.size() == max_len) return;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(i);
      self(self);
      cur.pop_back();
      used[i] = false;
    }
  };
  rec(rec);
  return out;
}

}  // namespace lgcluster
