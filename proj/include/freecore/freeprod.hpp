#pragma once

// M = M_d (+) M_c for a free product of two algebras with states, and the
// reduction that strips the scalar summand carrying 1_{M_d}.

#include <optional>
#include <string>
#include <vector>

#include "freecore/algebra.hpp"
#include "freecore/error.hpp"
#include "freecore/fdim.hpp"
#include "freecore/modular.hpp"
#include "freecore/structure_expr.hpp"

namespace freecore {

struct AtomSummand {
  Rational weight;
  std::size_t first_summand = 0;
  std::size_t second_summand = 0;
};

/// The scalar central summand p of M_{i0} with 1_{M_d} <= p.
struct ReductionPoint {
  int side = 1;  // i0 in {1, 2}
  ProjectionRef p;
  Rational weight;
};

struct FreeProductResult {
  std::vector<AtomSummand> m_d;
  FactorType m_c_type;
  Rational m_c_unit_weight{1};
  MultGroup sd;
  TSet t_set;
  std::optional<ReductionPoint> reduction;
  std::vector<std::string> reduction_trace;
  bool relative_commutant_trivial = true;  // M_c' ∩ M_c^ω = ℂ holds for every accepted pair

  Expr m_d_expr() const {
    if (m_d.empty()) return expr::direct_sum({});
    std::vector<std::pair<Rational, Expr>> parts;
    for (const auto& a : m_d) parts.emplace_back(a.weight, expr::scalars());
    return expr::direct_sum(std::move(parts));
  }
};

namespace detail {

/// Every atom pair shares a summand (two disjoint pairs would need total weight > 2).
inline ReductionPoint locate_reduction(const std::vector<AtomSummand>& atoms, const std::vector<Summand>& first,
                                       const std::vector<Summand>& second) {
  auto shared = [&](auto field) {
    for (const auto& a : atoms)
      if (a.*field != atoms.front().*field) return false;
    return true;
  };
  bool on_first = shared(&AtomSummand::first_summand);
  bool on_second = shared(&AtomSummand::second_summand);
  std::size_t i = atoms.front().first_summand, j = atoms.front().second_summand;
  if (on_first && on_second) {
    // A single atom: either side would do; take the heavier summand, first side on ties.
    if (second[j].weight > first[i].weight) on_first = false;
    else on_second = false;
  }
  if (on_first) return {1, ProjectionRef{i, std::nullopt}, first[i].weight};
  return {2, ProjectionRef{j, std::nullopt}, second[j].weight};
}

}  // namespace detail

inline FreeProductResult free_product(const AlgebraSpec& a, const AlgebraSpec& b, int height = 3) {
  require_valid(a);
  require_valid(b);
  reject_dim22(a, b);
  auto first = materialize(a, height);
  auto second = materialize(b, height);
  reject_matrix_pairings(first, second);

  FreeProductResult out;
  if (!has_full_weight_diffuse(a) && !has_full_weight_diffuse(b)) {
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (!first[i].is_scalar()) continue;
      for (std::size_t j = 0; j < second.size(); ++j) {
        if (!second[j].is_scalar()) continue;
        Rational w = first[i].weight + second[j].weight - Rational(1);
        if (w.is_positive()) out.m_d.push_back({w, i, j});
      }
    }
  }
  for (const auto& at : out.m_d) out.m_c_unit_weight -= at.weight;
  out.m_c_type = classify_diffuse_type(a, b);
  out.sd = sd_invariant(a, b);
  out.t_set = t_set_of(out.sd);

  if (!out.m_d.empty()) {
    auto rp = detail::locate_reduction(out.m_d, first, second);
    Rational delta = (Rational(1) - rp.weight).inverse();
    const auto& host = rp.side == 1 ? a : b;
    std::string mi = "M" + std::string(rp.side == 1 ? "₁" : "₂");
    out.reduction_trace.push_back("p = summand " + std::to_string(rp.p.summand) + " of " + mi + " ('" + host.name +
                                  "'), " + mi + "p = ℂp, φ(p) = " + rp.weight.to_string() + ", 1_{M_d} ≤ p");
    out.reduction_trace.push_back("δ = φ(p^⊥)^{-1} = " + delta.to_string());
    if (rp.side == 1) {
      out.reduction_trace.push_back("(p^⊥Mp^⊥, δφ) = (M₁p^⊥, δφ₁) ⋆ (p^⊥Np^⊥, δφ)");
      out.reduction_trace.push_back("(N, φ) = (ℂp ⊕ ℂp^⊥, φ₁) ⋆ (M₂, φ₂)");
    } else {
      out.reduction_trace.push_back("(p^⊥Mp^⊥, δφ) = (p^⊥Np^⊥, δφ) ⋆ (M₂p^⊥, δφ₂)");
      out.reduction_trace.push_back("(N, φ) = (M₁, φ₁) ⋆ (ℂp ⊕ ℂp^⊥, φ₂)");
    }
    out.reduction_trace.push_back("M_c is stably isomorphic to p^⊥Mp^⊥");
    out.reduction = rp;
  }
  return out;
}

/// Reduction data: the compressed side M_{i0}p^⊥ with weights scaled by
/// δ = φ(p^⊥)^{-1}, and the inner pair (ℂp ⊕ ℂp^⊥) ⋆ (other side).
struct ReducedPair {
  int side = 1;
  Rational delta;
  AlgebraSpec compressed;  // M_{i0} p^⊥ with δφ_{i0}
  AlgebraSpec two_point;   // ℂp ⊕ ℂp^⊥
  AlgebraSpec other;       // the untouched input
  Expr expr;               // stably isomorphic to M_c
};

inline ReducedPair strip_reduction(const AlgebraSpec& a, const AlgebraSpec& b, int side, const ProjectionRef& p) {
  if (side != 1 && side != 2) throw Error(ErrorKind::ValidationFailed, "reduction side must be 1 or 2");
  const AlgebraSpec& host = side == 1 ? a : b;
  require_valid(host);
  if (p.summand >= host.summands.size())
    throw Error(ErrorKind::NotScalarSummand, "projection refers to missing summand " + std::to_string(p.summand));
  const auto& s = host.summands[p.summand];
  if (!s.is_scalar())
    throw Error(ErrorKind::NotScalarSummand,
                "summand " + std::to_string(p.summand) + " of '" + host.name + "' is not ℂp (needs M_{i₀}p = ℂp)");
  if (p.diagonal && *p.diagonal != std::pair<std::size_t, std::size_t>{0, 1})
    throw Error(ErrorKind::NotScalarSummand, "diagonal range does not cover the scalar summand");
  if (s.weight == Rational(1))
    throw Error(ErrorKind::NotScalarSummand, "p is the whole unit; p^⊥ = 0");

  ReducedPair out;
  out.side = side;
  out.delta = (Rational(1) - s.weight).inverse();
  out.compressed.name = host.name + "·p^⊥";
  for (std::size_t i = 0; i < host.summands.size(); ++i) {
    if (i == p.summand) continue;
    Summand t = host.summands[i];
    t.weight *= out.delta;
    if (t.is<MatrixBlock>()) {
      auto blk = t.as<MatrixBlock>();
      for (auto& e : blk.eigenvalues) e *= out.delta;
      t.kind = blk;
    }
    out.compressed.summands.push_back(std::move(t));
  }
  if (host.tail) {
    out.compressed.tail = host.tail;
    out.compressed.tail->scale *= out.delta;
  }
  out.two_point.name = "ℂp ⊕ ℂp^⊥";
  out.two_point.summands = {scalar_atom(s.weight), scalar_atom(Rational(1) - s.weight)};
  out.other = side == 1 ? b : a;

  std::string mi = side == 1 ? "M₁" : "M₂";
  auto left = expr::label("(" + mi + "p^⊥, δφ)");
  auto inner = expr::label("p^⊥Np^⊥");
  out.expr = side == 1 ? expr::free_product({left, inner}) : expr::free_product({inner, left});
  return out;
}

}  // namespace freecore
