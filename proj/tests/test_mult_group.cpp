#include <gtest/gtest.h>

#include <set>

#include "freecore/mult_group.hpp"
#include "freecore/oracles.hpp"
#include "support.hpp"

using namespace freecore;

TEST(Factor, SignedExponents) {
  auto f = factor_rational(Rational(12, 35), default_prime_bound());
  std::map<std::uint64_t, std::int64_t> want{{2, 2}, {3, 1}, {5, -1}, {7, -1}};
  std::map<std::uint64_t, std::int64_t> got(f.begin(), f.end());
  EXPECT_EQ(got, want);
}

TEST(Factor, RejectsNonPositive) {
  EXPECT_THROW((void)factor_rational(Rational(0), 100), Error);
  EXPECT_THROW((void)factor_rational(Rational(-2), 100), Error);
}

TEST(Factor, LargePrimeBeyondBound) {
  try {
    (void)factor_rational(Rational(1000003LL * 1000033LL), 1000);
    FAIL() << "expected PrimeTooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PrimeTooLarge);
  }
}

TEST(MultGroup, RankAndBasis) {
  auto g = MultGroup::from_ratios({Rational(4), Rational(8), Rational(1, 2)});
  EXPECT_EQ(g.rank(), 1u);
  EXPECT_EQ(g.cyclic_generator(), Rational(1, 2));
  EXPECT_EQ(g.to_string(), "(2)^ℤ");

  auto h = MultGroup::from_ratios({Rational(2), Rational(3)});
  EXPECT_EQ(h.rank(), 2u);
  EXPECT_FALSE(h.cyclic_generator());
  EXPECT_EQ(h.to_string(), "⟨2, 3⟩");
  EXPECT_TRUE(MultGroup::from_ratios({Rational(1)}).is_trivial());
}

TEST(MultGroup, SubgroupIndexTwo) {
  auto g = MultGroup::from_ratios({Rational(4)});
  EXPECT_TRUE(g.contains(Rational(1, 16)));
  EXPECT_FALSE(g.contains(Rational(2)));
  EXPECT_TRUE(MultGroup::from_ratios({Rational(2)}).contains(g));
  EXPECT_FALSE(g.contains(MultGroup::from_ratios({Rational(2)})));
}

TEST(MultGroup, EnumerateHeightOneRankTwo) {
  auto g = MultGroup::from_ratios({Rational(2), Rational(3)});
  auto e = g.enumerate(1);
  ASSERT_EQ(e.size(), 9u);
  EXPECT_EQ(e.front().value, Rational(1));
  std::set<Rational> vals;
  for (const auto& x : e) vals.insert(x.value);
  std::set<Rational> want;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) want.insert(Rational(2).pow(a) * Rational(3).pow(b));
  EXPECT_EQ(vals, want);
}

TEST(MultGroup, ElementOfGivesCoordinates) {
  auto g = MultGroup::from_ratios({Rational(6), Rational(2, 3)});
  auto x = g.element_of(Rational(4));  // 4 = 6 · (2/3)
  ASSERT_TRUE(x);
  EXPECT_EQ(g.element_from_coords(x->coords).value, Rational(4));
  EXPECT_EQ(g.value_of(x->exponents), Rational(4));
  EXPECT_FALSE(g.element_of(Rational(2)));
  EXPECT_FALSE(g.element_of(Rational(5)));
}

// Membership agrees with exhaustive search over exponent vectors.
TEST(MultGroupProperty, MembershipMatchesBruteForce) {
  testgen::Gen gen(21);
  for (int it = 0; it < 150; ++it) {
    std::vector<Rational> gens{gen.smooth_ratio(), gen.smooth_ratio()};
    auto g = MultGroup::from_ratios(std::span<const Rational>(gens));
    auto x = gen.smooth_ratio(3);
    bool brute = oracle::brute_force_member(gens, x, 8);
    if (brute) {
      EXPECT_TRUE(g.contains(x)) << x;
    }
    if (g.contains(x)) {
      // A member always has a representation; check it with a generous bound.
      EXPECT_TRUE(oracle::brute_force_member(gens, x, 30)) << x;
    }
  }
}

TEST(MultGroupProperty, RankMatchesElimination) {
  testgen::Gen gen(22);
  for (int it = 0; it < 300; ++it) {
    std::vector<Rational> gens;
    for (int k = 0, n = (int)gen.uniform(1, 4); k < n; ++k) gens.push_back(gen.smooth_ratio(3));
    auto g = MultGroup::from_ratios(std::span<const Rational>(gens));
    EXPECT_EQ(g.rank(), oracle::lattice_rank(gens));
    for (const auto& x : gens) EXPECT_TRUE(g.contains(x));
    EXPECT_EQ(MultGroup::from_ratios(std::span<const Rational>(g.generators())), g);
  }
}

TEST(MultGroupProperty, EnumerationIsDistinctClosedAndOrdered) {
  testgen::Gen gen(23);
  for (int it = 0; it < 60; ++it) {
    auto g = gen.group();
    int h = (int)gen.uniform(0, 3);
    auto e = g.enumerate(h);
    std::size_t expect = 1;
    for (std::size_t k = 0; k < g.rank(); ++k) expect *= (std::size_t)(2 * h + 1);
    ASSERT_EQ(e.size(), expect);
    std::set<Rational> vals;
    for (const auto& x : e) {
      vals.insert(x.value);
      EXPECT_EQ(g.value_of(x.exponents), x.value);
      EXPECT_EQ(g.element_of(x.value)->coords, x.coords);
      EXPECT_TRUE(g.contains(x.value.inverse()));
    }
    EXPECT_EQ(vals.size(), e.size());
    EXPECT_EQ(e, g.enumerate(h));
  }
}
