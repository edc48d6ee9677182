#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace lgcluster;

namespace {

LaurentPoly U(std::string_view s, std::size_t n) { return parse_laurent(s, n, "u"); }
LaurentPoly X(std::string_view s, std::size_t n) { return parse_laurent(s, n, "x"); }

using Classes = std::set<std::pair<std::size_t, std::size_t>>;

// 1-based pairs
Classes classes(std::initializer_list<std::pair<std::size_t, std::size_t>> list) {
  Classes out;
  for (auto [i, j] : list) out.emplace(i - 1, j - 1);
  return out;
}

Classes nonzero_set(const ThinRep& R) {
  const auto v = R.nonzero_classes();
  return {v.begin(), v.end()};
}

LaurentPoly character(Surface x) {
  const auto d = virtual_char_data(x);
  return cluster_character(d.g, d.f_poly, standard_bmatrix(x));
}

LaurentPoly phi_of_potential(Surface x) {
  const LGSeed s = initial_seed(x);
  return phi(s, s.potential());
}

}  // namespace

TEST(StandardBMatrix, MatchesSeedBrackets) {
  for (Surface x : kAllSurfaces) EXPECT_EQ(standard_bmatrix(x), b_from_seed(initial_seed(x))) << surface_name(x);
}

TEST(ThinRep, NonzeroPatterns) {
  EXPECT_EQ(nonzero_set(initial_rep(Surface::CP2)), classes({{3, 2}}));
  const ThinRep bl2 = initial_rep(Surface::Bl2CP2);
  EXPECT_FALSE(bl2.nonzero(4, 3));
  const Quiver& q = bl2.quiver();
  for (std::size_t i = 1; i < 5; ++i) {
    for (std::size_t j = 1; j < 5; ++j) {
      if (q.arrows(i, j) > 0 && !(i == 4 && j == 3)) {
        EXPECT_TRUE(bl2.nonzero(i, j)) << i + 1 << "->" << j + 1;
      }
    }
  }
  const ThinRep bl3 = initial_rep(Surface::Bl3CP2);
  EXPECT_FALSE(bl3.nonzero(2, 5));
  EXPECT_EQ(nonzero_set(bl3), classes({{2, 3}, {4, 2}, {2, 5}, {6, 2}, {5, 3}, {4, 5}, {6, 4}}));
  EXPECT_THROW(initial_rep(Surface::CP2, 3), IndexOutOfRange);
}

TEST(ThinRep, IncidentClassesAreZero) {
  for (Surface x : kAllSurfaces) {
    for (std::size_t base = 0; base < standard_bmatrix(x).size(); ++base) {
      const ThinRep R = initial_rep(x, base);
      EXPECT_EQ(R.dim(base), 0);
      for (auto [i, j] : R.nonzero_classes()) {
        EXPECT_NE(i, base);
        EXPECT_NE(j, base);
        EXPECT_GT(R.quiver().arrows(i, j), 0);
      }
    }
  }
}

TEST(FPolynomial, Goldens) {
  EXPECT_EQ(f_polynomial(initial_rep(Surface::CP2)), U("1 + u2 + u2*u3", 3));
  EXPECT_EQ(f_polynomial(initial_rep(Surface::CP1xCP1)), U("1 + u3 + u3*u4 + u2*u3*u4", 4));
  EXPECT_EQ(f_polynomial(initial_rep(Surface::Bl3CP2)),
            U("1 + u3 + u3*u5 + u2*u3*u5 + u2*u3*u4*u5 + u2*u3*u4*u5*u6", 6));
}

TEST(FPolynomial, ConstantAndTopTerms) {
  for (Surface x : kAllSurfaces) {
    const std::size_t n = standard_bmatrix(x).size();
    for (std::size_t base = 0; base < n; ++base) {
      const LaurentPoly F = f_polynomial(initial_rep(x, base));
      EXPECT_EQ(F.constant_term(), 1);
      Monomial top(n);
      for (std::size_t i = 0; i < n; ++i) top[i] = i == base ? 0 : 1;
      EXPECT_EQ(F.coeff(top), 1) << surface_name(x) << " base " << base + 1;
    }
  }
}

// Independent enumeration: a subset is closed iff no nonzero class leaves it.
TEST(ClosedSubsets, LatticeAndBruteForce) {
  for (Surface x : kAllSurfaces) {
    const std::size_t n = standard_bmatrix(x).size();
    for (std::size_t base = 0; base < n; ++base) {
      const ThinRep R = initial_rep(x, base);
      const auto subsets = closed_subsets(R);
      const std::set<std::uint64_t> closed(subsets.begin(), subsets.end());
      std::set<std::uint64_t> brute;
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        if ((s >> base) & 1U) continue;
        bool ok = true;
        for (auto [i, j] : R.nonzero_classes()) ok = ok && (!((s >> i) & 1U) || ((s >> j) & 1U));
        if (ok) brute.insert(s);
      }
      EXPECT_EQ(closed, brute);
      for (auto a : closed) {
        for (auto b : closed) {
          EXPECT_TRUE(closed.count(a | b));
          EXPECT_TRUE(closed.count(a & b));
        }
      }
    }
  }
}

TEST(HVector, Examples) {
  EXPECT_EQ(h_vector(initial_rep(Surface::CP2)), (std::vector<std::int64_t>{0, -1, 0}));
  for (Surface x : kAllSurfaces) {
    const std::size_t n = standard_bmatrix(x).size();
    for (std::size_t base = 0; base < n; ++base) {
      const ThinRep R = initial_rep(x, base);
      const auto h = h_vector(R);
      EXPECT_EQ(h[base], 0);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_TRUE(h[i] == 0 || h[i] == -1);
        bool out = false;
        for (std::size_t j = 0; j < n; ++j) out = out || R.nonzero(i, j);
        if (out) {
          EXPECT_EQ(h[i], 0);
        }
      }
    }
  }
}

TEST(GVector, BaseEntryAndStoredValues) {
  EXPECT_EQ(g_vector(Surface::CP1xCP1), (std::vector<std::int64_t>{-1, 1, -1, 1}));
  EXPECT_EQ(g_vector(Surface::Bl1CP2), (std::vector<std::int64_t>{-1, -1, 1, 1}));
  EXPECT_EQ(g_vector(Surface::Bl2CP2), (std::vector<std::int64_t>{-1, 1, 1, 0, -1}));
  for (Surface x : kAllSurfaces) {
    EXPECT_EQ(g_vector(x).front(), -1);
    EXPECT_NO_THROW(virtual_char_data(x));
  }
}

// The CC display for CP2 forces g = (-1,-1,2): its x^g F(y) terms are
// x^g, x^g y2, x^g y2 y3, and only (-1,-1,2) makes them the three displayed
// monomials. (-1,2,-1) gives a different character.
TEST(GVector, CP2FromCharacter) {
  const LaurentPoly expected = X("x1^-1*x2^2*x3^-1 + x1^-1*x2^-1*x3^2 + x1^2*x2^-1*x3^-1", 3);
  const LaurentPoly F = f_polynomial(initial_rep(Surface::CP2));
  const BMatrix B = standard_bmatrix(Surface::CP2);
  EXPECT_EQ(g_vector(Surface::CP2), (std::vector<std::int64_t>{-1, -1, 2}));
  EXPECT_EQ(cluster_character(g_vector(Surface::CP2), F, B), expected);
  EXPECT_NE(cluster_character({-1, 2, -1}, F, B), expected);
}

TEST(GVector, Bl3CandidateSearch) {
  const LaurentPoly target = phi_of_potential(Surface::Bl3CP2);
  const LaurentPoly F = f_polynomial(initial_rep(Surface::Bl3CP2));
  const BMatrix B = standard_bmatrix(Surface::Bl3CP2);
  EXPECT_EQ(target.terms().size(), 6u);
  std::vector<std::vector<std::int64_t>> hits;
  for (const auto& [m, c] : target.terms()) {
    if (m[0] != -1) continue;
    const std::vector<std::int64_t> g(m.exponents().begin(), m.exponents().end());
    if (cluster_character(g, F, B) == target) hits.push_back(g);
  }
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits.front(), g_vector(Surface::Bl3CP2));
}

TEST(ClusterCharacter, Goldens) {
  EXPECT_EQ(character(Surface::CP2), X("x1^-1*x2^2*x3^-1 + x1^-1*x2^-1*x3^2 + x1^2*x2^-1*x3^-1", 3));
  EXPECT_EQ(character(Surface::CP1xCP1),
            X("x1^-1*x2*x3^-1*x4 + x1*x2*x3^-1*x4^-1 + x1*x2^-1*x3*x4^-1 + x1^-1*x2^-1*x3*x4", 4));
  EXPECT_EQ(character(Surface::Bl2CP2), X("x1^-1*x2*x3*x5^-1 + x1*x2^-1*x4*x5^-1 + x1*x2^-1*x3^-1*x5 + "
                                          "x1^-1*x2*x4^-1*x5 + x3^-1*x4^-1*x5^2",
                                          5));
  const BMatrix B = standard_bmatrix(Surface::CP2);
  EXPECT_EQ(cluster_character({2, 0, -1}, LaurentPoly::one(3), B), X("x1^2*x3^-1", 3));
}

TEST(ClusterCharacter, EqualsPhiOfPotential) {
  for (Surface x : kAllSurfaces) EXPECT_EQ(character(x), phi_of_potential(x)) << surface_name(x);
}

TEST(GMutate, Formula) {
  const BMatrix B = standard_bmatrix(Surface::CP2);
  // g_k = h_k = 0 leaves g alone.
  EXPECT_EQ(g_mutate(B, {4, 0, -3}, 0, 1), (std::vector<std::int64_t>{4, 0, -3}));
  // k = 2 (1-based): b_12 = 3, b_32 = -3, h_2 = -1.
  //   g_1' = -1 + 3*(-1) - 3*(-1) = -1,  g_3' = 2 + 0 - (-3)*(-1) = -1
  const auto g = g_vector(Surface::CP2);
  EXPECT_EQ(g_mutate(B, g, -1, 1), (std::vector<std::int64_t>{-1, 1, -1}));
  EXPECT_THROW(g_mutate(B, g, 0, 3), IndexOutOfRange);
}

TEST(GMutate, DoubleApplicationRestores) {
  for (Surface x : kAllSurfaces) {
    const BMatrix B = standard_bmatrix(x);
    const auto g = g_vector(x);
    const auto h = h_vector(initial_rep(x));
    for (std::size_t k = 0; k < B.size(); ++k) {
      const auto g1 = g_mutate(B, g, h[k], k);
      const auto g2 = g_mutate(bmatrix_mutate(B, k), g1, h[k] - g[k], k);
      EXPECT_EQ(g2, g) << surface_name(x) << " " << k + 1;
    }
  }
}

TEST(FMutation, PassesAwayFromBase) {
  for (Surface x : kAllSurfaces) {
    const auto d = virtual_char_data(x);
    const auto h = h_vector(initial_rep(x));
    const BMatrix B = standard_bmatrix(x);
    for (std::size_t k = 1; k < B.size(); ++k) {
      const auto r = f_mutation_check(B, d.f_poly, d.g, h, k);
      EXPECT_TRUE(r.passed) << surface_name(x) << " at " << k + 1 << ": " << r.failure;
      if (r.passed) {
        EXPECT_EQ(r.mutated_f->constant_term(), 1);
      }
    }
  }
}

TEST(FMutation, CP2AtVertexTwo) {
  const auto d = virtual_char_data(Surface::CP2);
  const auto r = f_mutation_check(standard_bmatrix(Surface::CP2), d.f_poly, d.g, {0, -1, 0}, 1);
  ASSERT_TRUE(r.passed) << r.failure;
  EXPECT_EQ(r.h_after, 0);
}

// The negative simple S_k^- (F = 1, g = e_k, h = 0) mutates to the simple
// S_k, whose F-polynomial is 1 + u_k.
TEST(FMutation, NegativeSimple) {
  const BMatrix B = standard_bmatrix(Surface::Bl1CP2);
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<std::int64_t> g(4, 0);
    g[k] = 1;
    const auto r = f_mutation_check(B, LaurentPoly::one(4), g, std::vector<std::int64_t>(4, 0), k);
    ASSERT_TRUE(r.passed) << r.failure;
    EXPECT_EQ(*r.mutated_f, LaurentPoly::one(4) + LaurentPoly::variable(4, k));
    EXPECT_EQ(r.h_after, -1);
  }
}

TEST(FMutation, CorruptedGFails) {
  for (Surface x : kAllSurfaces) {
    auto d = virtual_char_data(x);
    const auto h = h_vector(initial_rep(x));
    const BMatrix B = standard_bmatrix(x);
    for (std::size_t k = 1; k < B.size(); ++k) {
      // Raising g_k only multiplies F' by (1 + u_k); lowering it divides.
      auto g = d.g;
      g[k] -= 1;
      const auto r = f_mutation_check(B, d.f_poly, g, h, k);
      EXPECT_FALSE(r.passed) << surface_name(x) << " at " << k + 1;
      EXPECT_FALSE(r.failure.empty());
    }
  }
}
