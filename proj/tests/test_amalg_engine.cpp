#include <gtest/gtest.h>

#include <set>

#include "freecore/amalg_engine.hpp"
#include "freecore/oracles.hpp"
#include "support.hpp"

using namespace freecore;

namespace {

Adjacency path(std::size_t n) {
  Adjacency a(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a[i].push_back(i + 1);
    a[i + 1].push_back(i);
  }
  return a;
}

ScenarioIndex ix(std::string id, Rational beta, std::vector<Rational> atoms, std::optional<Rational> gamma = {},
                 Expr q = expr::hyperfinite()) {
  return {std::move(id), beta, std::move(atoms), gamma, std::move(q)};
}

AlgebraSpec qubit() { return {"q", {matrix_block({Rational(2, 3), Rational(1, 3)})}, std::nullopt}; }
AlgebraSpec hyperfinite() { return {"R", {Summand{HyperfiniteDiffuse{true}, Rational(1)}}, std::nullopt}; }
AlgebraSpec abstract_n() { return {"N", {Summand{AbstractII1{"N", Rational(1)}, Rational(1)}}, std::nullopt}; }

AlgebraSpec family(std::vector<Rational> gens) {
  return {"family", {}, TailRule{std::move(gens), Rational(1), Rational(1, 2)}};
}

}  // namespace

TEST(Layers, StarAndPath) {
  Adjacency star(4);
  for (std::size_t i = 1; i < 4; ++i) {
    star[0].push_back(i);
    star[i].push_back(0);
  }
  EXPECT_EQ(layer_partition(star, 0), (std::vector<std::vector<std::size_t>>{{0}, {1, 2, 3}}));
  EXPECT_EQ(layer_partition(path(4), 2), (std::vector<std::vector<std::size_t>>{{2}, {1, 3}, {0}}));
}

TEST(Layers, Errors) {
  Adjacency two(3);
  two[0] = {1};
  two[1] = {0};
  try {
    (void)layer_partition(two, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DisconnectedIndex);
  }
  Adjacency asym(2);
  asym[0] = {1};
  EXPECT_THROW((void)layer_partition(asym, 0), Error);
  EXPECT_THROW((void)layer_partition(path(3), 7), Error);
}

TEST(Order, LexicographicOnLayerAndPosition) {
  auto o = ordered_index({{2}, {3, 1}, {0}});
  EXPECT_EQ(o.sequence, (std::vector<std::size_t>{2, 3, 1, 0}));
  EXPECT_TRUE(o.precedes(2, 3));
  EXPECT_TRUE(o.precedes(3, 1));
  EXPECT_TRUE(o.precedes(1, 0));
  EXPECT_FALSE(o.precedes(0, 1));
}

TEST(IncreasingSequence, StartsAtOneAndScansForward) {
  // Layers of γ*^0 .. γ*^6.
  std::vector<std::size_t> layer{0, 1, 1, 2, 1, 3, 3};
  auto m = choose_increasing_sequence(layer, 4);
  EXPECT_EQ(m.front(), 1u);
  EXPECT_TRUE(oracle::increasing_sequence_holds(
      m, [&](std::size_t a, std::size_t b) { return std::pair(layer[a], a) < std::pair(layer[b], b); }));
  EXPECT_EQ(m, (std::vector<std::size_t>{1, 2, 3, 5}));
}

TEST(IncreasingSequence, StopsWhenPowersRunOut) {
  auto never = [](std::size_t, std::size_t) { return false; };
  EXPECT_EQ(choose_increasing_sequence(never, 10, 3), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(choose_increasing_sequence(never, 10, 0).empty());
}

TEST(Compression, TwoIndexExample) {
  CompressionScenario sc{{ix("o", Rational(1, 2), {Rational(1, 2)}, {}, expr::scalars()),
                          ix("2", Rational(1, 2), {}, Rational(1, 4))},
                         0,
                         std::nullopt};
  auto r = compression_formula(sc);
  // (1/2)^{-2} ((1/4 - 1/4) + (1/4 - 1/16)) = 3/4
  EXPECT_EQ(r.r, Rational(3, 4));
  EXPECT_EQ(r.r, oracle::sequential_two_index_r(sc.indices[0], sc.indices[1], Rational(1, 4)));
  EXPECT_EQ(r.expr.to_string(), "ℂ ⋆ L(F_3/4) ⋆ [1/2, R^{1/2}]");
}

TEST(Compression, GammaChoices) {
  CompressionScenario sc{{ix("o", Rational(1, 2), {Rational(1, 4), Rational(1, 8)}),
                          ix("a", Rational(1, 3), {Rational(1, 6)})},
                         0,
                         path(2)};
  auto smallest = compression_formula(sc);
  EXPECT_EQ(*smallest.gamma[1], Rational(1, 8));
  auto chosen = compression_formula(sc, GammaChoice::parse("explicit:1/4"));
  EXPECT_EQ(*chosen.gamma[1], Rational(1, 4));
  EXPECT_NE(smallest.r, chosen.r);
  EXPECT_THROW((void)GammaChoice::parse("largest"), Error);
  try {
    (void)compression_formula(sc, GammaChoice::parse("explicit:1/2"));  // > β(a)
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidScenario);
  }
}

TEST(Compression, InvalidScenarios) {
  auto kind_of = [](const CompressionScenario& sc) {
    try {
      (void)compression_formula(sc);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  // Σα > β
  EXPECT_EQ(kind_of({{ix("o", Rational(1, 4), {Rational(1, 4), Rational(1, 8)})}, 0, std::nullopt}),
            ErrorKind::InvalidScenario);
  // No earlier minimal projection to borrow γ from.
  EXPECT_EQ(kind_of({{ix("o", Rational(1, 2), {}), ix("a", Rational(1, 2), {})}, 0, std::nullopt}),
            ErrorKind::InvalidScenario);
  Adjacency cut(3);
  cut[0] = {1};
  cut[1] = {0};
  EXPECT_EQ(kind_of({{ix("o", Rational(1, 2), {Rational(1, 4)}), ix("a", Rational(1, 4), {}, Rational(1, 4)),
                      ix("b", Rational(1, 4), {}, Rational(1, 4))},
                     0,
                     cut}),
            ErrorKind::DisconnectedIndex);
}

TEST(Compression, FollowsLayerOrder) {
  // o - b - a: a comes after b even though it is listed first.
  Adjacency adj(3);
  adj[0] = {2};
  adj[2] = {0, 1};
  adj[1] = {2};
  CompressionScenario sc{{ix("o", Rational(1, 2), {Rational(1, 4)}), ix("a", Rational(1, 8), {}),
                          ix("b", Rational(1, 4), {Rational(1, 8)})},
                         0,
                         adj};
  auto r = compression_formula(sc);
  EXPECT_EQ(r.order, (std::vector<std::size_t>{0, 2, 1}));
  EXPECT_EQ(*r.gamma[2], Rational(1, 4));
  EXPECT_EQ(*r.gamma[1], Rational(1, 8));
}

TEST(Canonical, Rewrites) {
  using E = Extended;
  EXPECT_EQ(to_canonical(expr::free_product({expr::matrix(2), expr::matrix(2)})), expr::free_group(E(Rational(3, 2))));
  EXPECT_EQ(to_canonical(expr::free_product({expr::hyperfinite(), expr::scalars(), expr::hyperfinite()})),
            expr::free_group(E(Rational(2))));
  EXPECT_EQ(to_canonical(expr::amplify(E(Rational(1, 2)), expr::free_group(E(Rational(3))))),
            expr::free_group(E(Rational(9))));
  EXPECT_EQ(to_canonical(expr::amplify(E(Rational(2)), expr::amplify(E(Rational(1, 2)), expr::abstract("N")))),
            expr::abstract("N"));
  EXPECT_EQ(to_canonical(expr::amplify(E::infinity(), expr::hyperfinite())), expr::hyperfinite(false));
  EXPECT_EQ(to_canonical(expr::compressed(Rational(2), expr::compressed(Rational(1, 2), expr::matrix(3)))),
            expr::matrix(3));
  auto g = MultGroup::from_ratios({Rational(2)});
  EXPECT_EQ(to_canonical(expr::indexed(IndexedNode::Op::FreeProduct, g, expr::hyperfinite(), true)),
            expr::free_group(E::infinity()));
  EXPECT_EQ(to_canonical(expr::indexed(IndexedNode::Op::FreeProduct, MultGroup::trivial(), expr::abstract("N"), true)),
            expr::abstract("N"));
  EXPECT_EQ(to_canonical(expr::direct_sum({{Rational(1), expr::direct_sum({{Rational(1), expr::matrix(2)}})}})),
            expr::matrix(2));
  EXPECT_THROW((void)to_canonical(expr::amalgamated(g, {expr::matrix(2), expr::matrix(2)})), Error);
  EXPECT_THROW((void)to_canonical(expr::amplify(E::unknown(), expr::matrix(2))), Error);
}

TEST(Canonical, DichotomyPromotion) {
  auto g = MultGroup::from_ratios({Rational(2)});
  EXPECT_EQ(dichotomy_promote(expr::free_group(Extended(Rational(3, 4))), g), expr::free_group(Extended::infinity()));
  EXPECT_EQ(dichotomy_promote(expr::free_group(Extended(Rational(3, 4))), MultGroup::trivial()),
            expr::free_group(Extended(Rational(3, 4))));
}

TEST(CanonicalProperty, IdempotentOnRandomTerms) {
  testgen::Gen g(81);
  for (int it = 0; it < 500; ++it) {
    auto e = g.expr(4);
    auto c = to_canonical(e);
    EXPECT_EQ(to_canonical(c), c) << e.to_string();
  }
}

TEST(Centralizer, TracialPairUsesFreeDimension) {
  AlgebraSpec m2{"M2", {tracial_block(2, Rational(1))}, std::nullopt};
  auto r = centralizer_structure(m2, m2);
  EXPECT_EQ(r.branch, CentralizerBranch::TracialFinite);
  EXPECT_EQ(r.canonical, expr::free_group(Extended(Rational(3, 2))));
  EXPECT_FALSE(r.cartan_free);
}

TEST(Centralizer, NonTracialHyperfinitePair) {
  auto r = centralizer_structure(qubit(), hyperfinite());
  EXPECT_EQ(r.branch, CentralizerBranch::AlmostPeriodicClasses);
  EXPECT_EQ(r.canonical, expr::free_group(Extended::infinity()));
  ASSERT_TRUE(r.core);
  EXPECT_EQ(describe_core(*r.core), "amplification of L(F_∞)");
  EXPECT_TRUE(r.cartan_free);
  EXPECT_TRUE(r.prime);
}

TEST(Centralizer, AtomicFamilyAgainstFactor) {
  auto fam = family({Rational(1, 2), Rational(1, 3)});
  auto r = centralizer_structure(fam, abstract_n(), 2);
  EXPECT_EQ(r.branch, CentralizerBranch::AtomicWithII1Factor);
  EXPECT_EQ(r.expression.to_string(), "⋆_{γ∈Γ}(N)^γ");
  EXPECT_EQ(r.expansion.size(), 25u);
  EXPECT_EQ(r.gamma, MultGroup::from_ratios({Rational(2), Rational(3)}));
  auto swapped = centralizer_structure(abstract_n(), fam, 2);
  EXPECT_EQ(swapped.expression, r.expression);
}

TEST(Centralizer, ExtremalTypeIII) {
  AlgebraSpec iii{"iii", {full_iii({Rational(1, 2)})}, std::nullopt};
  auto r = centralizer_structure(iii, hyperfinite());
  EXPECT_EQ(r.branch, CentralizerBranch::ExtremalIIIWithTracial);
  EXPECT_EQ(r.expression.to_string(), "(M₁)_{φ₁} ⋆ L(F_∞)");
  auto n = centralizer_structure(abstract_n(), iii);
  EXPECT_EQ(n.expression.to_string(), "(M₂)_{φ₂} ⋆ ⋆_{γ∈Γ}(N)^γ");
}

TEST(Centralizer, UnrecognizedHypotheses) {
  AlgebraSpec mixed{"mixed", {scalar_atom(Rational(1, 2)), Summand{AbstractII1{"N", Rational(1)}, Rational(1, 2)}},
                    std::nullopt};
  try {
    (void)centralizer_structure(qubit(), mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesesNotRecognized);
  }
}
