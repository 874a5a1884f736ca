#pragma once

/**
 * Free-dimension bookkeeping for finite tracial algebras.
 *
 * For A = (+)_i M_{n_i} (trace weights a_i) (+) (+)_j L(F_{r_j}) (weights w_j)
 * (+) diffuse hyperfinite pieces,
 *
 *     fdim(A) = 1 + sum_j w_j^2 (r_j - 1) - sum_i (a_i / n_i)^2,
 *
 * so fdim(M_n) = 1 - 1/n^2, fdim(L(F_r)) = r, fdim(R) = 1. fdim is additive
 * over free products and an amplification by t rescales r - 1 by 1/t^2.
 */

#include <span>
#include <vector>

#include "freecore/algebra.hpp"
#include "freecore/error.hpp"
#include "freecore/modular.hpp"
#include "freecore/structure_expr.hpp"

namespace freecore {

/// Parameter of L(F_r)^t: 1 + (r - 1) / t^2.
inline Extended compress_param(const Extended& r, const Rational& t) {
  if (!t.is_positive()) throw Error(ErrorKind::UnsupportedStructure, "amplification must be positive");
  if (!r.is_finite()) return r;
  return Extended(Rational(1) + (r.value() - Rational(1)) / (t * t));
}

inline Extended fdim(const AlgebraSpec& spec) {
  require_valid(spec);
  if (!is_tracial(spec))
    throw Error(ErrorKind::UnsupportedStructure, "free dimension needs a tracial state; '" + spec.name + "' is not");
  if (spec.tail) throw Error(ErrorKind::UnsupportedStructure, "free dimension of an infinite family");
  Rational value(1);
  bool infinite = false;
  for (const auto& s : spec.summands) {
    if (s.is<MatrixBlock>()) {
      Rational m = s.weight / Rational(static_cast<long long>(s.as<MatrixBlock>().size()));
      value -= m * m;
    } else if (s.is<HyperfiniteDiffuse>()) {
      if (!s.as<HyperfiniteDiffuse>().finite)
        throw Error(ErrorKind::UnsupportedStructure, "free dimension of a semifinite hyperfinite summand");
    } else if (s.is<FreeGroupFactor>()) {
      const auto& f = s.as<FreeGroupFactor>();
      auto r = compress_param(f.param, f.amplification);
      if (r.is_infinite()) infinite = true;
      else value += s.weight * s.weight * (r.value() - Rational(1));
    } else {
      throw Error(ErrorKind::UnsupportedStructure,
                  "free dimension covers matrix, hyperfinite and free group summands only; '" + spec.name +
                      "' has a " + kind_name(s) + " summand");
    }
  }
  return infinite ? Extended::infinity() : Extended(value);
}

/// Atoms of the free product coming from pairs of scalar central summands:
/// weight alpha + beta - 1 for every pair with alpha + beta > 1.
inline std::vector<Rational> scalar_atom_rule(std::span<const Rational> first, std::span<const Rational> second) {
  std::vector<Rational> out;
  for (const auto& a : first)
    for (const auto& b : second)
      if (a + b > Rational(1)) out.push_back(a + b - Rational(1));
  return out;
}

inline Rational largest_eigenvalue(const MatrixBlock& b) {
  Rational m = b.eigenvalues.front();
  for (const auto& e : b.eigenvalues) m = std::max(m, e);
  return m;
}

/// Rejects pairings that would put a matrix summand of size >= 2 into the
/// finite-dimensional part. A block of size n enters with λ_max/n (the tracial
/// weight/n² threshold); a pair of blocks, not both scalar, is rejected when
/// the two amounts add up to more than 1.
inline void reject_matrix_pairings(const std::vector<Summand>& first, const std::vector<Summand>& second) {
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (!first[i].is<MatrixBlock>()) continue;
    const auto& a = first[i].as<MatrixBlock>();
    for (std::size_t j = 0; j < second.size(); ++j) {
      if (!second[j].is<MatrixBlock>()) continue;
      const auto& b = second[j].as<MatrixBlock>();
      if (a.size() == 1 && b.size() == 1) continue;
      auto amount = [](const MatrixBlock& m) { return largest_eigenvalue(m) / Rational((long long)m.size()); };
      if (amount(a) + amount(b) > Rational(1))
        throw Error(ErrorKind::UnsupportedStructure,
                    "pairing of a " + std::to_string(a.size()) + "x" + std::to_string(a.size()) + " block with a " +
                        std::to_string(b.size()) + "x" + std::to_string(b.size()) +
                        " block exceeds the atom threshold; the finite-dimensional part would contain a matrix "
                        "summand of size >= 2");
    }
  }
}

struct FiniteAtom {
  Rational weight;
  std::size_t first_summand = 0;   // scalar summand of the first input
  std::size_t second_summand = 0;  // scalar summand of the second input
};

/// M_d (+) L(F_r): scalar atoms plus one interpolated free group factor.
struct FiniteFreeProduct {
  std::vector<FiniteAtom> atoms;
  Rational diffuse_weight{1};
  Extended param;
  Extended fdim_total;

  Expr expr() const {
    if (atoms.empty()) return expr::free_group(param);
    std::vector<std::pair<Rational, Expr>> parts;
    for (const auto& a : atoms) parts.emplace_back(a.weight, expr::scalars());
    parts.emplace_back(diffuse_weight, expr::free_group(param));
    return expr::direct_sum(std::move(parts));
  }

  AlgebraSpec as_spec(std::string name = "product") const {
    AlgebraSpec s;
    s.name = std::move(name);
    for (const auto& a : atoms) s.summands.push_back(scalar_atom(a.weight));
    s.summands.push_back(Summand{FreeGroupFactor{param, Rational(1)}, diffuse_weight});
    return s;
  }
};

inline bool finite_tracial_kinds(const AlgebraSpec& spec) {
  if (spec.tail) return false;
  for (const auto& s : spec.summands) {
    if (s.is<MatrixBlock>() || s.is<FreeGroupFactor>()) continue;
    if (s.is<HyperfiniteDiffuse>() && s.as<HyperfiniteDiffuse>().finite) continue;
    return false;
  }
  return true;
}

/// Free product of two finite tracial algebras: scalar atoms from the atom
/// rule, the rest an interpolated free group factor whose parameter balances
///     fdim(A) + fdim(B) = 1 + w^2 (r - 1) - sum_k a_k^2,   w = 1 - sum_k a_k.
inline FiniteFreeProduct finite_free_product(const AlgebraSpec& a, const AlgebraSpec& b) {
  require_valid(a);
  require_valid(b);
  if (!finite_tracial_kinds(a) || !finite_tracial_kinds(b))
    throw Error(ErrorKind::UnsupportedStructure,
                "finite free product takes matrix, finite hyperfinite and free group summands only");
  if (!is_tracial(a) || !is_tracial(b))
    throw Error(ErrorKind::UnsupportedStructure, "finite free product needs tracial states");
  reject_dim22(a, b);
  reject_matrix_pairings(a.summands, b.summands);

  FiniteFreeProduct out;
  for (std::size_t i = 0; i < a.summands.size(); ++i) {
    if (!a.summands[i].is_scalar()) continue;
    for (std::size_t j = 0; j < b.summands.size(); ++j) {
      if (!b.summands[j].is_scalar()) continue;
      std::vector<Rational> alpha{a.summands[i].weight}, beta{b.summands[j].weight};
      for (const auto& w : scalar_atom_rule(alpha, beta)) out.atoms.push_back({w, i, j});
    }
  }
  Rational atom_mass(0), atom_sq(0);
  for (const auto& at : out.atoms) {
    atom_mass += at.weight;
    atom_sq += at.weight * at.weight;
  }
  out.diffuse_weight = Rational(1) - atom_mass;
  out.fdim_total = fdim(a) + fdim(b);
  if (!out.fdim_total.is_finite()) {
    out.param = Extended::infinity();
    return out;
  }
  const Rational& w = out.diffuse_weight;
  Rational r = Rational(1) + (out.fdim_total.value() - Rational(1) + atom_sq) / (w * w);
  if (r <= Rational(1))
    throw Error(ErrorKind::UnsupportedStructure,
                "free dimension balance gives parameter " + r.to_string() + " <= 1; not an interpolated free group factor");
  out.param = Extended(r);
  return out;
}

}  // namespace freecore
