#pragma once

/**
 * Discrete core of the diffuse summand: M ⋊ G as the amalgamated free product
 * (M₁ ⋊ G) ⋆_{ℓ^∞(Γ)} (M₂ ⋊ G), where G is the compact dual of Γ = Sd.
 *
 * The amalgam ℂ ⋊ G ≅ ℓ^∞(Γ) is spanned by minimal projections e_γ with
 * Tr(e_γ) = γ⁻¹, and the dual action moves labels by θ_γ(e_γ') = e_γγ' while
 * scaling Tr by γ⁻¹. Everything Γ-indexed is truncated at an enumeration height.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freecore/algebra.hpp"
#include "freecore/error.hpp"
#include "freecore/fdim.hpp"
#include "freecore/freeprod.hpp"
#include "freecore/modular.hpp"
#include "freecore/mult_group.hpp"
#include "freecore/structure_expr.hpp"

namespace freecore {

struct CoreLabelAlgebra {
  MultGroup group;
  int height = 0;
  std::vector<GroupElement> labels;  // enumerate(group, height)

  Rational trace_of_e(const Rational& gamma) const {
    if (!group.contains(gamma))
      throw Error(ErrorKind::RatioOutsideGroup, gamma.to_string() + " is not in Γ = " + group.to_string());
    return gamma.inverse();
  }

  /// Σ_γ Tr(e_γ) = Σ γ⁻¹ over a nontrivial Γ diverges; only flagged, never summed.
  bool trace_sum_diverges() const { return !group.is_trivial(); }
};

inline CoreLabelAlgebra core_labels(const MultGroup& gamma, int height) {
  return {gamma, height, gamma.enumerate(height)};
}

/// One constituent f_kj ⊗ δ_{γ_kj⁻¹γ} of p_γ.
struct TransportEntry {
  std::size_t k = 0;  // block, 1-based
  std::size_t j = 0;  // minimal projection within the block, 1-based
  Rational label;     // γ_kj⁻¹ γ
  Rational tr0;       // c_k γ_kj / γ
};

/// Density of the state on block k, written c_k Σ_j γ_kj f_kj with γ_k1 = 1 decreasing.
struct AtomicBlockData {
  Rational c;
  std::vector<Rational> gammas;
};

inline AtomicBlockData atomic_block_data(const MatrixBlock& b) {
  auto ev = b.eigenvalues;
  std::sort(ev.begin(), ev.end(), std::greater<>());
  AtomicBlockData d{ev.front(), {}};
  for (const auto& e : ev) d.gammas.push_back(e / d.c);
  return d;
}

inline std::vector<TransportEntry> transport_atomic(const std::vector<AtomicBlockData>& blocks, const Rational& gamma,
                                                    const MultGroup& group) {
  if (!group.contains(gamma))
    throw Error(ErrorKind::RatioOutsideGroup, gamma.to_string() + " is not in Γ = " + group.to_string());
  std::vector<TransportEntry> out;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& b = blocks[k];
    for (std::size_t j = 0; j < b.gammas.size(); ++j) {
      const auto& g = b.gammas[j];
      if (!group.contains(g))
        throw Error(ErrorKind::RatioOutsideGroup, "γ_" + std::to_string(k + 1) + "," + std::to_string(j + 1) + " = " +
                                                      g.to_string() + " is not in Γ = " + group.to_string());
      out.push_back({k + 1, j + 1, g.inverse() * gamma, b.c * g / gamma});
    }
  }
  return out;
}

/// Block data of every matrix summand of an atomic spec, tail blocks to `height`.
inline std::vector<AtomicBlockData> atomic_blocks(const AlgebraSpec& spec, int height) {
  std::vector<AtomicBlockData> out;
  for (const auto& s : materialize(spec, height)) {
    if (!s.is<MatrixBlock>())
      throw Error(ErrorKind::UnsupportedStructure, "'" + spec.name + "' is not atomic type I");
    out.push_back(atomic_block_data(s.as<MatrixBlock>()));
  }
  return out;
}

struct CrossedComponent {
  enum class Shape { HyperfiniteSemifinite, TensorWithLabels, AmplifiedFreeGroupSum };
  std::size_t source_index = 0;
  Summand source;
  Shape shape = Shape::HyperfiniteSemifinite;
  Expr description;
  std::vector<std::pair<Rational, Rational>> amplifications;  // (coset representative γ, amplification γ⁻¹)
  std::optional<AtomicBlockData> transport;                   // matrix sources only

  static std::string shape_name(Shape s) {
    switch (s) {
      case Shape::HyperfiniteSemifinite: return "HyperfiniteSemifinite";
      case Shape::TensorWithLabels: return "TensorWithLabels";
      case Shape::AmplifiedFreeGroupSum: return "AmplifiedFreeGroupSum";
    }
    return "?";
  }
};

/// Fixed-point corner of a full type III summand: its crossed product is a
/// sum over Γ/Λ of amplifications of the centralizer L(F_∞).
inline Expr fixed_point_corner(const FullIIIWithCore& f, const MultGroup& gamma) {
  if (!gamma.contains(f.sd))
    throw Error(ErrorKind::SubgroupNotContained, "Sd = " + f.sd.to_string() + " does not sit in Γ = " + gamma.to_string());
  return expr::indexed(IndexedNode::Op::DirectSum, gamma, expr::free_group(Extended::infinity()), true);
}

/// First element (in enumeration order) of each coset γΛ met at this height.
inline std::vector<Rational> coset_representatives(const MultGroup& gamma, const MultGroup& lambda, int height) {
  std::vector<Rational> reps;
  for (const auto& e : gamma.enumerate(height)) {
    bool fresh = true;
    for (const auto& r : reps)
      if (lambda.contains(e.value / r)) { fresh = false; break; }
    if (fresh) reps.push_back(e.value);
  }
  return reps;
}

inline CrossedComponent crossed_component(const Summand& s, std::size_t index, const MultGroup& gamma, int height) {
  using Op = IndexedNode::Op;
  CrossedComponent c;
  c.source_index = index;
  c.source = s;
  auto scaled = [](const Rational& t, Expr e) { return t == Rational(1) ? e : expr::amplify(Extended(t), std::move(e)); };
  if (s.is<MatrixBlock>()) {
    c.shape = CrossedComponent::Shape::HyperfiniteSemifinite;
    c.description = expr::indexed(Op::DirectSum, gamma, expr::matrix(s.as<MatrixBlock>().size()), false);
    c.transport = atomic_block_data(s.as<MatrixBlock>());
  } else if (s.is<HyperfiniteDiffuse>()) {
    c.shape = CrossedComponent::Shape::HyperfiniteSemifinite;
    c.description = expr::indexed(Op::DirectSum, gamma, expr::hyperfinite(s.as<HyperfiniteDiffuse>().finite), false);
  } else if (s.is<FreeGroupFactor>()) {
    const auto& f = s.as<FreeGroupFactor>();
    c.shape = CrossedComponent::Shape::TensorWithLabels;
    c.description = expr::indexed(Op::DirectSum, gamma, scaled(f.amplification, expr::free_group(f.param)), false);
  } else if (s.is<AbstractII1>()) {
    const auto& f = s.as<AbstractII1>();
    c.shape = CrossedComponent::Shape::TensorWithLabels;
    c.description = expr::indexed(Op::DirectSum, gamma, scaled(f.amplification, expr::abstract(f.label)), false);
  } else {
    const auto& f = s.as<FullIIIWithCore>();
    c.shape = CrossedComponent::Shape::AmplifiedFreeGroupSum;
    c.description = fixed_point_corner(f, gamma);
    for (const auto& r : coset_representatives(gamma, f.sd, height)) c.amplifications.emplace_back(r, r.inverse());
  }
  return c;
}

struct CoreDecomposition {
  CoreLabelAlgebra labels;
  std::vector<CrossedComponent> first;
  std::vector<CrossedComponent> second;
  Expr expression;                   // (M₁ ⋊ G) ⋆_{ℓ^∞(Γ)} (M₂ ⋊ G)
  std::optional<Expr> m_d_copies;    // M_d ⊗̄ ℓ^∞(Γ), when M_d ≠ 0
  Expr core_of_m_c;
};

namespace detail {

inline Expr crossed_side(const std::vector<CrossedComponent>& comps) {
  if (comps.size() == 1) return comps.front().description;
  std::vector<std::pair<Rational, Expr>> parts;
  for (const auto& c : comps) parts.emplace_back(c.source.weight, c.description);
  return expr::direct_sum(std::move(parts));
}

}  // namespace detail

inline CoreDecomposition build_core(const AlgebraSpec& a, const AlgebraSpec& b, int height = 3) {
  require_valid(a);
  require_valid(b);
  if (is_tracial(a) && is_tracial(b))
    throw Error(ErrorKind::TrivialGamma, "both states are tracial; Γ = {1} and there is no discrete decomposition");
  auto fp = free_product(a, b, height);

  CoreDecomposition out;
  out.labels = core_labels(fp.sd, height);
  auto sa = materialize(a, height), sb = materialize(b, height);
  for (std::size_t i = 0; i < sa.size(); ++i) out.first.push_back(crossed_component(sa[i], i, fp.sd, height));
  for (std::size_t i = 0; i < sb.size(); ++i) out.second.push_back(crossed_component(sb[i], i, fp.sd, height));
  out.expression = expr::amalgamated(fp.sd, {detail::crossed_side(out.first), detail::crossed_side(out.second)});
  if (!fp.m_d.empty())
    out.m_d_copies = expr::indexed(IndexedNode::Op::DirectSum, fp.sd, fp.m_d_expr(), false);
  out.core_of_m_c = expr::label("M̂_c");
  return out;
}

/// θ_γ on the truncated labels: e_γ' ↦ e_γγ', with Tr ∘ θ_γ = γ⁻¹ Tr.
struct DualAction {
  Rational gamma;
  std::map<Rational, Rational> relabel;
  Rational trace_scaling;

  Rational operator()(const Rational& label) const { return gamma * label; }
};

inline DualAction dual_action(const CoreLabelAlgebra& labels, const Rational& gamma) {
  if (!labels.group.contains(gamma))
    throw Error(ErrorKind::RatioOutsideGroup, gamma.to_string() + " is not in Γ = " + labels.group.to_string());
  DualAction d{gamma, {}, gamma.inverse()};
  for (const auto& e : labels.labels) d.relabel.emplace(e.value, gamma * e.value);
  return d;
}

inline DualAction dual_action(const CoreDecomposition& core, const Rational& gamma) {
  return dual_action(core.labels, gamma);
}

}  // namespace freecore
