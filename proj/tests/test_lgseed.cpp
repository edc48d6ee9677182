#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "support.hpp"

using namespace lgcluster;
using testing_support::random_poly;

namespace {

LaurentPoly P(std::string_view s) { return parse_laurent(s, 2); }

RatFunc z_pow(Vec2 w) { return RatFunc(LaurentPoly(w.monomial(), 1)); }

Vec2 random_vec(std::mt19937_64& rng, int r) {
  std::uniform_int_distribution<Exponent> d(-r, r);
  return {d(rng), d(rng)};
}

Direction random_direction(std::mt19937_64& rng, int r) {
  for (;;) {
    const Vec2 v = random_vec(rng, r);
    if (is_primitive(v)) return Direction(v);
  }
}

}  // namespace

TEST(Vec2, PerpExamples) {
  EXPECT_EQ(perp(Vec2{1, 1}), (Vec2{1, -1}));
  EXPECT_EQ(perp(Vec2{0, 1}), (Vec2{1, 0}));
  EXPECT_EQ(perp(Vec2{1, -2}), (Vec2{-2, -1}));
  EXPECT_EQ(perp(perp(Vec2{1, -2})), (Vec2{-1, 2}));
}

TEST(Vec2, Forms) {
  EXPECT_EQ(scalar({1, 1}, {1, 0}), 1);
  EXPECT_EQ(symplectic({1, 1}, {-2, 1}), 3);
  EXPECT_EQ(symplectic({5, -7}, {5, -7}), 0);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const Vec2 v = random_vec(rng, 1000), w = random_vec(rng, 1000);
    EXPECT_EQ(symplectic(v, w), -scalar(perp(v), w));
    EXPECT_EQ(symplectic(v, w), -symplectic(w, v));
  }
}

TEST(Direction, MustBePrimitive) {
  EXPECT_THROW(Direction(0, 0), InvalidArgument);
  EXPECT_THROW(Direction(2, -4), InvalidArgument);
  EXPECT_NO_THROW(Direction(-3, 2));
}

TEST(Tropical, Examples) {
  EXPECT_EQ(tropical_mutate({1, 1}, {-2, 1}), (Vec2{-2, 1}));
  EXPECT_EQ(tropical_mutate({1, 1}, {1, -2}), (Vec2{4, 1}));
  EXPECT_EQ(tropical_mutate({2, 3}, {2, 3}), (Vec2{2, 3}));
}

// mu_{-v} mu_v w = w + {w,v} v. The other orientation, w + {v,w} v, fails
// already for v = (1,0), w = (0,1).
TEST(Tropical, DoubleMutationIsTransvection) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 2000; ++t) {
    const Direction v = random_direction(rng, 20);
    const Vec2 w = random_vec(rng, 50);
    EXPECT_EQ(tropical_mutate(-v, tropical_mutate(v, w)), w + symplectic(w, v) * v.vec());
  }
  const Direction v(1, 0);
  const Vec2 w{0, 1};
  EXPECT_NE(tropical_mutate(-v, tropical_mutate(v, w)), w + symplectic(v, w) * v.vec());
}

TEST(MonomialMutate, Examples) {
  const LaurentPoly binom = P("1 + z1*z2^-1");
  EXPECT_EQ(monomial_mutate({1, 1}, {0, 1}), RatFunc(P("z2"), binom));
  EXPECT_EQ(monomial_mutate({1, 1}, {-1, -1}), RatFunc(P("z1^-1*z2^-1") * binom * binom));
  EXPECT_EQ(monomial_mutate({1, 1}, {3, -3}), z_pow({3, -3}));
}

TEST(MonomialMutate, AgreesWithSubstitution) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const Direction v = random_direction(rng, 3);
    const Vec2 w = random_vec(rng, 3);
    EXPECT_EQ(monomial_mutate(v, w), mutate_function(v, z_pow(w)));
  }
}

// On monomials mu_{-v} mu_v (z^w) = z^{w - (v,w) v^perp}. The variant
// z^{w + {v,w} v^perp} is refuted by v = w = (1,0): the double mutation gives
// z1*z2 while {v,w} = 0.
TEST(MonomialMutate, DoubleMutationOnMonomials) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const Direction v = random_direction(rng, 3);
    const Vec2 w = random_vec(rng, 3);
    const RatFunc twice = mutate_function(-v, monomial_mutate(v, w));
    EXPECT_EQ(twice, z_pow(w + (-scalar(v, w)) * perp(v.vec())));
  }
  const Direction v(1, 0);
  const Vec2 w{1, 0};
  const RatFunc twice = mutate_function(-v, monomial_mutate(v, w));
  EXPECT_EQ(twice, RatFunc(P("z1*z2")));
  EXPECT_NE(twice, z_pow(w + symplectic(v, w) * perp(v.vec())));
}

TEST(MutatePotential, NonLaurentIsNullopt) {
  // mu_(0,1)(z1 + z2) = z1 + z2 / (1 + z1).
  EXPECT_FALSE(mutate_potential(P("z1 + z2"), Direction(0, 1)).has_value());
  EXPECT_THROW(seed_mutate(LGSeed(P("z1 + z2"), {{0, 1}}), 0), NotLaurent);
  // Terms with (v,w) <= 0 never need a division.
  EXPECT_EQ(mutate_potential(P("z1^-1 + z2^-1"), Direction(0, 1)), P("z1^-1 + z2^-1 + z1*z2^-1"));
}

TEST(SeedMutate, CP2FirstDirection) {
  const LGSeed s = seed_mutate(initial_seed(Surface::CP2), 0);
  EXPECT_EQ(s.potential(), P("z2 + z1^-1*z2^-1 + 2*z2^-2 + z1*z2^-3"));
  EXPECT_EQ(s.potential().to_string(), "z1^-1*z2^-1 + 2*z2^-2 + z2 + z1*z2^-3");
  const std::vector<Direction> dirs{{-1, -1}, {-2, 1}, {4, 1}};
  EXPECT_EQ(s.directions(), dirs);
}

// Oracle: substitute the mutation images into W as a rational function and
// reduce, without the common-denominator shortcut.
TEST(SeedMutate, PotentialAgreesWithSubstitution) {
  for (Surface x : kAllSurfaces) {
    for (const auto& seq : repetition_free_sequences(initial_seed(x).size(), 2)) {
      const LGSeed s = iterate(initial_seed(x), seq);
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::find(seq.begin(), seq.end(), i) != seq.end()) continue;
        const RatFunc oracle = mutate_function(s.direction(i), RatFunc(s.potential()));
        ASSERT_TRUE(oracle.is_laurent());
        EXPECT_EQ(seed_mutate(s, i).potential(), oracle.num()) << surface_name(x);
      }
    }
  }
}

TEST(SeedMutate, RandomPotentials) {
  std::mt19937_64 rng(13);
  int laurent = 0;
  for (int t = 0; t < 300; ++t) {
    const LaurentPoly w = random_poly(rng, 2, 5, 2, 4);
    const Direction v = random_direction(rng, 2);
    const RatFunc oracle = mutate_function(v, RatFunc(w));
    const auto got = mutate_potential(w, v);
    ASSERT_EQ(got.has_value(), oracle.is_laurent()) << w.to_string();
    if (got) {
      ++laurent;
      EXPECT_EQ(*got, oracle.num());
    }
  }
  EXPECT_GT(laurent, 0);
}

TEST(SeedMutate, DoubleMutationIsNotIdentity) {
  const LGSeed s0 = initial_seed(Surface::CP2);
  const LGSeed s2 = seed_mutate(seed_mutate(s0, 0), 0);
  EXPECT_NE(s2.directions(), s0.directions());
  const Direction v = s0.direction(0);
  for (std::size_t j = 0; j < s0.size(); ++j) {
    EXPECT_EQ(s2.direction(j).vec(), s0.direction(j).vec() + symplectic(s0.direction(j), v) * v.vec());
  }
  // The potential is W composed with z^w -> z^{w - (v,w) v^perp}.
  LaurentPoly expected(2);
  for (const auto& [m, c] : s0.potential().terms()) {
    const Vec2 w{m[0], m[1]};
    expected.add_term((w + (-scalar(v, w)) * perp(v.vec())).monomial(), c);
  }
  EXPECT_EQ(s2.potential(), expected);
  EXPECT_EQ(s2.potential(), P("z2 + z1^-1*z2^2 + z1*z2^-3"));
}

TEST(SeedMutate, IndexOutOfRange) {
  EXPECT_THROW(seed_mutate(initial_seed(Surface::CP2), 3), IndexOutOfRange);
}

TEST(SeedMutate, DirectionsMayCoincide) {
  const LGSeed s = seed_mutate(initial_seed(Surface::CP1xCP1), 0);
  ASSERT_TRUE(s.coinciding_directions().has_value());
  EXPECT_EQ(*s.coinciding_directions(), (std::pair<std::size_t, std::size_t>{0, 3}));
  for (Surface x : kAllSurfaces) EXPECT_TRUE(initial_seed(x).distinct_directions());
}

TEST(InitialSeed, Potentials) {
  EXPECT_EQ(initial_seed(Surface::CP2).potential(), P("z1 + z2 + z1^-1*z2^-1"));
  EXPECT_EQ(initial_seed(Surface::Bl3CP2).potential(), P("z1 + z2 + z1^-1 + z2^-1 + z1*z2 + z1^-1*z2^-1"));
  std::map<Surface, std::size_t> sizes{{Surface::CP2, 3},    {Surface::CP1xCP1, 4}, {Surface::Bl1CP2, 4},
                                       {Surface::Bl2CP2, 5}, {Surface::Bl3CP2, 6}};
  for (Surface x : kAllSurfaces) EXPECT_EQ(initial_seed(x).size(), sizes[x]);
}

// Brackets {v_i, v_j} against the exchange matrices written out by hand.
TEST(InitialSeed, DirectionOrderReproducesExchangeMatrices) {
  const std::map<Surface, std::vector<std::vector<Exponent>>> expected{
      {Surface::CP2, {{0, 3, -3}, {-3, 0, 3}, {3, -3, 0}}},
      {Surface::CP1xCP1, {{0, -2, 2, 0}, {2, 0, 0, -2}, {-2, 0, 0, 2}, {0, 2, -2, 0}}},
      {Surface::Bl1CP2, {{0, 3, -1, -2}, {-3, 0, 2, 1}, {1, -2, 0, 1}, {2, -1, -1, 0}}},
      {Surface::Bl2CP2,
       {{0, 0, -1, -1, 2}, {0, 0, 1, 1, -2}, {1, -1, 0, 1, -1}, {1, -1, -1, 0, 1}, {-2, 2, 1, -1, 0}}},
      {Surface::Bl3CP2,
       {{0, 0, 1, -1, 1, -1},
        {0, 0, -1, 1, -1, 1},
        {-1, 1, 0, 0, 1, -1},
        {1, -1, 0, 0, -1, 1},
        {-1, 1, -1, 1, 0, 0},
        {1, -1, 1, -1, 0, 0}}},
  };
  for (Surface x : kAllSurfaces) {
    const LGSeed s = initial_seed(x);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        EXPECT_EQ(symplectic(s.direction(i), s.direction(j)), expected.at(x)[i][j])
            << surface_name(x) << " " << i << "," << j;
      }
    }
  }
}

TEST(InitialSeed, LaurentInEveryDirection) {
  for (Surface x : kAllSurfaces) {
    const LGSeed s = initial_seed(x);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NO_THROW(seed_mutate(s, i)) << surface_name(x) << " " << i;
  }
}

TEST(Surface, NamesRoundTrip) {
  for (Surface x : kAllSurfaces) EXPECT_EQ(parse_surface(surface_name(x)), x);
  EXPECT_EQ(parse_surface("cp2"), Surface::CP2);
  EXPECT_FALSE(parse_surface("Bl4CP2").has_value());
}

TEST(Iterate, EmptyAndSingle) {
  const LGSeed s = initial_seed(Surface::CP2);
  EXPECT_EQ(iterate(s, {}), s);
  EXPECT_EQ(iterate(s, {0}), seed_mutate(s, 0));
  EXPECT_EQ(iterate(s, {0, 2, 1}), seed_mutate(seed_mutate(seed_mutate(s, 0), 2), 1));
}

TEST(Iterate, RepetitionPolicy) {
  const LGSeed s = initial_seed(Surface::CP2);
  EXPECT_THROW(iterate(s, {0, 0}), RepetitionRejected);
  EXPECT_THROW(iterate(s, {0, 1, 0}), RepetitionRejected);
  EXPECT_EQ(iterate(s, {0, 0}, RepetitionPolicy::Allow), seed_mutate(seed_mutate(s, 0), 0));
  EXPECT_THROW(iterate(s, {0, 5}), IndexOutOfRange);
}

TEST(Iterate, NotLaurentReportsStep) {
  // Laurent in direction (1,0); afterwards z2 / (1 + z1) appears in direction (0,1).
  const LGSeed s(P("z1^-1 + z2"), {{1, 0}, {0, 1}});
  try {
    iterate(s, {0, 1});
    FAIL() << "expected NotLaurent";
  } catch (const NotLaurent& e) {
    EXPECT_EQ(e.step(), 1u);
    EXPECT_EQ(e.direction(), 1u);
  }
  try {
    iterate(s, {1});
    FAIL() << "expected NotLaurent";
  } catch (const NotLaurent& e) {
    EXPECT_EQ(e.step(), 0u);
  }
}

TEST(Sequences, Counts) {
  auto falling = [](std::size_t n) {
    std::size_t total = 0, term = 1;
    for (std::size_t k = 1; k <= n; ++k) total += (term *= n - k + 1);
    return total;
  };
  EXPECT_EQ(repetition_free_sequences(3, 3).size() - 1, 15u);
  EXPECT_EQ(repetition_free_sequences(6, 6).size() - 1, 1956u);
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(repetition_free_sequences(n, n).size() - 1, falling(n));
  const auto seqs = repetition_free_sequences(4, 2);
  EXPECT_EQ(seqs.front(), std::vector<std::size_t>{});
  EXPECT_EQ(seqs[1], std::vector<std::size_t>{0});
  EXPECT_EQ(seqs[2], (std::vector<std::size_t>{0, 1}));
}

// Every repetition-free sequence stays Laurent, and the coefficients of the
// mutated potentials stay positive.
TEST(Iterate, LaurentAndPositiveOnAllSequences) {
  for (Surface x : kAllSurfaces) {
    const LGSeed s0 = initial_seed(x);
    const std::size_t n = s0.size();
    std::size_t visited = 0, nonpositive = 0;
    std::vector<std::size_t> seq;
    std::vector<bool> used(n, false);
    auto dfs = [&](auto&& self, const LGSeed& s) -> void {
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        LGSeed child = [&] {
          try {
            return seed_mutate(s, i);
          } catch (const NotLaurent&) {
            ADD_FAILURE() << surface_name(x) << " not Laurent after " << seq.size() << " steps";
            throw;
          }
        }();
        ++visited;
        for (const auto& [m, c] : child.potential().terms()) {
          if (c <= 0) ++nonpositive;
        }
        used[i] = true;
        seq.push_back(i);
        self(self, child);
        seq.pop_back();
        used[i] = false;
      }
    };
    dfs(dfs, s0);
    EXPECT_EQ(visited, repetition_free_sequences(n, n).size() - 1);
    EXPECT_EQ(nonpositive, 0u) << surface_name(x);
  }
}
