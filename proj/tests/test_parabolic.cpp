#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "coxeter/gram.hpp"
#include "coxeter/parabolic.hpp"
#include "support.hpp"

using namespace coxeter;
using namespace testing_support;

namespace {

// Oracles built only on the signature engine and brute force over subsets.
bool pd(const CoxeterSystem& sys, Mask m) {
  return exact_signature(restrict_to(sys, m)) == Signature{popcount(m), 0, 0};
}

std::vector<Mask> oracle_minimal_infinite(const CoxeterSystem& sys) {
  std::vector<Mask> out;
  for (Mask m = 1; m <= full_mask(sys.rank()); ++m) {
    if (pd(sys, m)) continue;
    bool minimal = true;
    for (Mask r = m; r && minimal; r &= r - 1) minimal = pd(sys, m & ~bit(lowest(r)));
    if (minimal) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) { return size_lex_less(a, b); });
  return out;
}

std::optional<Mask> oracle_affine(const CoxeterSystem& sys) {
  std::vector<Mask> found;
  const auto nb = detail::neighbour_masks(sys);
  for (Mask m = 1; m <= full_mask(sys.rank()); ++m) {
    if (popcount(m) < 3 || !detail::is_connected(nb, m)) continue;
    if (exact_signature(restrict_to(sys, m)) == Signature{popcount(m) - 1, 1, 0})
      found.push_back(m);
  }
  if (found.empty()) return std::nullopt;
  return *std::min_element(found.begin(), found.end(),
                           [](Mask a, Mask b) { return size_lex_less(a, b); });
}

std::size_t oracle_max_spherical(const CoxeterSystem& sys) {
  std::size_t best = 0;
  for (Mask m = 1; m <= full_mask(sys.rank()); ++m)
    if (pd(sys, m)) best = std::max(best, popcount(m));
  return best;
}

}  // namespace

TEST(MinimalInfinite, Examples) {
  EXPECT_TRUE(minimal_infinite_subsets(path({3, 3, 3})).empty());
  auto tri = minimal_infinite_subsets(triangle(3, 3, 3));
  ASSERT_EQ(tri.size(), 1u);
  EXPECT_EQ(tri[0], VertexSubset::full(3));
  auto with_inf = from_edges(4, {{0, 1, L(3)}, {1, 2, kInf}, {2, 3, L(3)}});
  auto mi = minimal_infinite_subsets(with_inf);
  ASSERT_FALSE(mi.empty());
  EXPECT_EQ(mi[0], VertexSubset::from_indices(4, {1, 2}));
}

TEST(MinimalInfinite, AntichainCoveringAndOracleProperty) {
  std::mt19937 rng(101);
  const std::vector<Label> labels{L(2), L(2), L(3), L(4), L(6), kInf};
  for (int trial = 0; trial < 200; ++trial) {
    auto sys = random_system(rng, 1 + rng() % 7, labels);
    auto got = minimal_infinite_subsets(sys);
    std::vector<Mask> masks;
    for (const auto& v : got) masks.push_back(v.bits());
    ASSERT_EQ(masks, oracle_minimal_infinite(sys));
    for (Mask a : masks)
      for (Mask b : masks)
        if (a != b) EXPECT_NE(a & b, a);
    for (Mask m = 1; m <= full_mask(sys.rank()); ++m) {
      if (pd(sys, m)) continue;
      EXPECT_TRUE(std::any_of(masks.begin(), masks.end(),
                              [&](Mask x) { return (x & m) == x; }));
    }
  }
}

TEST(HasAffineParabolic, Examples) {
  EXPECT_EQ(has_affine_parabolic(cycle({3, 3, 3, 3})), VertexSubset::full(4));
  EXPECT_FALSE(has_affine_parabolic(path({3, 3, 3})).has_value());
  // Rank 10: star with arms 1, 2, 6 contains ~E8 on the first nine vertices.
  auto e10 = star(1, 2, 6);
  auto j = has_affine_parabolic(e10);
  ASSERT_TRUE(j.has_value());
  EXPECT_EQ(j->size(), 9u);
  EXPECT_EQ(classify_irreducible(restrict(e10, *j)).name(), "~E8");
}

TEST(HasAffineParabolic, RankTwoInfinityNeedsTheFlag) {
  auto inf = from_edges(2, {{0, 1, kInf}});
  EXPECT_FALSE(has_affine_parabolic(inf).has_value());
  EXPECT_EQ(has_affine_parabolic(inf, true), VertexSubset::full(2));
}

TEST(HasAffineParabolic, MatchesOracleProperty) {
  std::mt19937 rng(103);
  const std::vector<Label> labels{L(2), L(2), L(3), L(3), L(4), L(6), kInf};
  for (int trial = 0; trial < 200; ++trial) {
    auto sys = random_system(rng, 1 + rng() % 7, labels);
    auto got = has_affine_parabolic(sys);
    auto expected = oracle_affine(sys);
    ASSERT_EQ(got.has_value(), expected.has_value());
    if (got) {
      EXPECT_EQ(got->bits(), *expected);
    }
  }
}

TEST(MaxSphericalRank, Examples) {
  EXPECT_EQ(max_spherical_rank(path({3, 3, 3})), 4u);
  EXPECT_EQ(max_spherical_rank(triangle(3, 3, 3)), 2u);
  EXPECT_EQ(max_spherical_rank(CoxeterSystem(0)), 0u);
}

TEST(MaxSphericalRank, OracleAndPermutationInvarianceProperty) {
  std::mt19937 rng(107);
  const std::vector<Label> labels{L(2), L(3), L(4), L(6), kInf};
  for (int trial = 0; trial < 200; ++trial) {
    auto sys = random_system(rng, 1 + rng() % 7, labels);
    const std::size_t d = max_spherical_rank(sys);
    ASSERT_EQ(d, oracle_max_spherical(sys));
    auto perm = random_permutation(rng, sys.rank());
    EXPECT_EQ(max_spherical_rank(permute(sys, perm)), d);
  }
}

TEST(Monotonicity, SubsetsOfSphericalAreSphericalProperty) {
  std::mt19937 rng(109);
  const std::vector<Label> labels{L(2), L(2), L(3), L(4), L(5)};
  for (int trial = 0; trial < 200; ++trial) {
    auto sys = random_system(rng, 1 + rng() % 7, labels);
    for (Mask k = 0; k <= full_mask(sys.rank()); ++k) {
      if (!is_spherical(restrict_to(sys, k))) continue;
      for (Mask j = k; j; j = (j - 1) & k) EXPECT_TRUE(is_spherical(restrict_to(sys, j)));
    }
  }
}
