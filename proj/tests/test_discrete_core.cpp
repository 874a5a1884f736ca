#include <gtest/gtest.h>

#include <set>

#include "freecore/discrete_core.hpp"
#include "support.hpp"

using namespace freecore;

namespace {

AlgebraSpec qubit() { return {"q", {matrix_block({Rational(2, 3), Rational(1, 3)})}, std::nullopt}; }
AlgebraSpec tracial_m2() { return {"M2", {tracial_block(2, Rational(1))}, std::nullopt}; }
AlgebraSpec hyperfinite() { return {"R", {Summand{HyperfiniteDiffuse{true}, Rational(1)}}, std::nullopt}; }

}  // namespace

TEST(CoreLabels, TraceTableForQubit) {
  auto core = build_core(qubit(), tracial_m2());
  EXPECT_EQ(core.labels.group, MultGroup::from_ratios({Rational(2)}));
  EXPECT_EQ(core.labels.trace_of_e(Rational(1)), Rational(1));
  EXPECT_EQ(core.labels.trace_of_e(Rational(2)), Rational(1, 2));
  EXPECT_EQ(core.labels.trace_of_e(Rational(1, 2)), Rational(2));
  EXPECT_TRUE(core.labels.trace_sum_diverges());
  try {
    (void)core.labels.trace_of_e(Rational(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RatioOutsideGroup);
  }
}

TEST(CoreLabels, TracialPairHasNoCore) {
  try {
    (void)build_core(tracial_m2(), hyperfinite());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TrivialGamma);
  }
}

TEST(DualAction, MovesLabelsAndScalesTrace) {
  auto core = build_core(qubit(), tracial_m2());
  auto th = dual_action(core, Rational(2));
  EXPECT_EQ(th(Rational(1, 2)), Rational(1));
  EXPECT_EQ(th.relabel.at(Rational(1, 2)), Rational(1));
  EXPECT_EQ(th.trace_scaling, Rational(1, 2));
  // Tr(θ_2(e_1)) = Tr(e_2) = 1/2 = 2⁻¹ Tr(e_1)
  EXPECT_EQ(core.labels.trace_of_e(th(Rational(1))), th.trace_scaling * core.labels.trace_of_e(Rational(1)));
  EXPECT_THROW((void)dual_action(core, Rational(3)), Error);
}

TEST(Transport, QubitBlockConstituents) {
  auto g = MultGroup::from_ratios({Rational(2)});
  std::vector<AtomicBlockData> blocks{atomic_block_data(qubit().summands.front().as<MatrixBlock>())};
  EXPECT_EQ(blocks[0].c, Rational(2, 3));
  EXPECT_EQ(blocks[0].gammas, (std::vector<Rational>{Rational(1), Rational(1, 2)}));
  auto t = transport_atomic(blocks, Rational(2), g);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].label, Rational(2));
  EXPECT_EQ(t[1].label, Rational(4));
  EXPECT_EQ(t[0].tr0 + t[1].tr0, Rational(1, 2));
  EXPECT_THROW((void)transport_atomic(blocks, Rational(3), g), Error);
}

TEST(CrossedComponents, Shapes) {
  auto g = MultGroup::from_ratios({Rational(2)});
  auto h = crossed_component(hyperfinite().summands.front(), 0, g, 2);
  EXPECT_EQ(h.shape, CrossedComponent::Shape::HyperfiniteSemifinite);
  auto f = crossed_component(Summand{FreeGroupFactor{Extended(Rational(3)), Rational(1)}, Rational(1)}, 0, g, 2);
  EXPECT_EQ(f.shape, CrossedComponent::Shape::TensorWithLabels);
  EXPECT_EQ(f.description.to_string(), "⊕_{γ∈Γ}(L(F_3))");
  auto m = crossed_component(qubit().summands.front(), 0, g, 2);
  EXPECT_EQ(m.shape, CrossedComponent::Shape::HyperfiniteSemifinite);
  ASSERT_TRUE(m.transport);
}

TEST(CrossedComponents, BothHyperfiniteInputs) {
  AlgebraSpec r{"R", {Summand{HyperfiniteDiffuse{true}, Rational(1)}}, std::nullopt};
  auto core = build_core(qubit(), r);
  for (const auto& c : core.first) EXPECT_EQ(c.shape, CrossedComponent::Shape::HyperfiniteSemifinite);
  for (const auto& c : core.second) EXPECT_EQ(c.shape, CrossedComponent::Shape::HyperfiniteSemifinite);
}

TEST(CrossedComponents, FullTypeIIICosets) {
  auto gamma = MultGroup::from_ratios({Rational(2)});
  auto f = full_iii({Rational(1, 4)});
  auto c = crossed_component(f, 0, gamma, 3);
  EXPECT_EQ(c.shape, CrossedComponent::Shape::AmplifiedFreeGroupSum);
  EXPECT_EQ(c.description.to_string(), "⊕_{γ∈Γ}(L(F_∞))^γ");
  // Γ/Λ = 2^ℤ / 4^ℤ has two cosets.
  ASSERT_EQ(c.amplifications.size(), 2u);
  EXPECT_EQ(c.amplifications[0].first, Rational(1));
  EXPECT_FALSE(MultGroup::from_ratios({Rational(4)}).contains(c.amplifications[1].first));

  auto same = crossed_component(full_iii({Rational(1, 2)}), 0, gamma, 3);
  EXPECT_EQ(same.amplifications.size(), 1u);

  try {
    (void)fixed_point_corner(full_iii({Rational(1, 3)}).as<FullIIIWithCore>(), gamma);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SubgroupNotContained);
  }
}

TEST(CoreDecomposition, RejectsMatrixSummandInMd) {
  // 9/10 + (1/2)/2² > 1 would leave an M₂ summand in the finite part.
  AlgebraSpec a{"A", {scalar_atom(Rational(9, 10)), matrix_block({Rational(1, 15), Rational(1, 30)})}, std::nullopt};
  AlgebraSpec b{"B", {scalar_atom(Rational(1, 2)), tracial_block(2, Rational(1, 2))}, std::nullopt};
  try {
    (void)build_core(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedStructure);
  }
}

TEST(CoreDecomposition, ExpressionAndCentralParts) {
  AlgebraSpec a{"A", {scalar_atom(Rational(9, 10)), matrix_block({Rational(1, 15), Rational(1, 30)})}, std::nullopt};
  AlgebraSpec b{"B", {scalar_atom(Rational(1, 2)), Summand{HyperfiniteDiffuse{true}, Rational(1, 2)}}, std::nullopt};
  auto core = build_core(a, b);
  EXPECT_TRUE(core.expression.is<AmalgamatedNode>());
  ASSERT_TRUE(core.m_d_copies);  // 9/10 + 1/2 > 1
  EXPECT_EQ(core.m_d_copies->to_string(), "⊕_{γ∈Γ}(ℂ_{2/5})");
  EXPECT_EQ(core.first.size(), 2u);
  EXPECT_EQ(core.second.size(), 2u);
}

// Tr(e_γ)·γ = 1 on every enumerated label.
TEST(CoreProperty, TraceLaw) {
  testgen::Gen g(71);
  for (int it = 0; it < 40; ++it) {
    auto gamma = g.group();
    auto labels = core_labels(gamma, (int)g.uniform(0, 4));
    for (const auto& e : labels.labels) EXPECT_EQ(labels.trace_of_e(e.value) * e.value, Rational(1));
  }
}

// Σ Tr₀ over the constituents of p_γ is γ⁻¹.
TEST(CoreProperty, TransportConservation) {
  testgen::Gen g(72);
  for (int it = 0; it < 40; ++it) {
    auto gamma = g.group();
    auto gens = gamma.generators();
    auto spec = g.atomic((std::size_t)g.uniform(1, 3), 3, gens);
    auto blocks = atomic_blocks(spec, 3);
    for (const auto& e : gamma.enumerate(2)) {
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        std::vector<AtomicBlockData> one{blocks[k]};
        Rational total(0);
        for (const auto& t : transport_atomic(one, e.value, gamma)) total += t.tr0;
        Rational sum_g(0);
        for (const auto& x : blocks[k].gammas) sum_g += x;
        // c_k Σ_j γ_kj is the block weight.
        EXPECT_EQ(total * blocks[k].c.inverse(), sum_g * e.value.inverse());
        EXPECT_EQ(total, spec.summands[k].weight * e.value.inverse());
      }
      Rational all(0);
      for (const auto& t : transport_atomic(blocks, e.value, gamma)) all += t.tr0;
      EXPECT_EQ(all, e.value.inverse());
    }
  }
}

// θ_γ θ_γ' = θ_γγ', and every θ scales traces by γ⁻¹.
TEST(CoreProperty, DualActionIsAGroupAction) {
  testgen::Gen g(73);
  auto gamma = MultGroup::from_ratios({Rational(2), Rational(3)});
  auto labels = core_labels(gamma, 4);
  ASSERT_GE(labels.labels.size(), 50u);
  for (int it = 0; it < 100; ++it) {
    auto x = g.pick(labels.labels).value, y = g.pick(labels.labels).value;
    auto tx = dual_action(labels, x), ty = dual_action(labels, y), txy = dual_action(labels, x * y);
    for (const auto& e : labels.labels) {
      EXPECT_EQ(tx(ty(e.value)), txy(e.value));
      EXPECT_EQ(labels.trace_of_e(tx(e.value)), tx.trace_scaling * labels.trace_of_e(e.value));
    }
    EXPECT_EQ(tx.trace_scaling * ty.trace_scaling, txy.trace_scaling);
  }
}
