#pragma once

// Independent recomputations used to cross-check the main routines. None of
// these share code paths with the routine they check beyond the Rational type
// and prime factorization.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freecore/algebra.hpp"
#include "freecore/amalg_engine.hpp"
#include "freecore/fdim.hpp"
#include "freecore/mult_group.hpp"

namespace freecore::oracle {

/// Rank of the exponent lattice of `ratios` by Gaussian elimination over ℚ.
inline std::size_t lattice_rank(const std::vector<Rational>& ratios) {
  std::map<uint64_t, std::size_t> col;
  std::vector<std::map<uint64_t, int64_t>> facts;
  for (const auto& r : ratios) {
    auto f = factor_rational(r, default_prime_bound());
    std::map<uint64_t, int64_t> m(f.begin(), f.end());
    for (const auto& [p, e] : m) col.emplace(p, 0);
    facts.push_back(std::move(m));
  }
  std::size_t c = 0;
  for (auto& [p, idx] : col) idx = c++;
  std::vector<std::vector<Rational>> rows;
  for (const auto& m : facts) {
    std::vector<Rational> row(c, Rational(0));
    for (const auto& [p, e] : m) row[col[p]] = Rational(e);
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t j = 0; j < c && rank < rows.size(); ++j) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][j].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][j].is_zero()) continue;
      Rational f = rows[i][j] / rows[rank][j];
      for (std::size_t k = j; k < c; ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// x ∈ ⟨gens⟩ by exhaustive search over exponent vectors with |e_i| <= bound.
inline bool brute_force_member(const std::vector<Rational>& gens, const Rational& x, int bound) {
  std::vector<int> e(gens.size(), -bound);
  while (true) {
    Rational v(1);
    for (std::size_t i = 0; i < gens.size(); ++i) v *= gens[i].pow(e[i]);
    if (v == x) return true;
    std::size_t i = 0;
    while (i < e.size() && e[i] == bound) e[i++] = -bound;
    if (i == e.size()) return false;
    ++e[i];
  }
}

/// fdim of a corner normalized to trace 1: atoms α/β plus a diffuse hyperfinite rest.
inline Rational corner_fdim(const Rational& beta, const std::vector<Rational>& atoms) {
  AlgebraSpec s{"corner", {}, std::nullopt};
  Rational rest(1);
  for (const auto& a : atoms) {
    s.summands.push_back(scalar_atom(a / beta));
    rest -= a / beta;
  }
  if (rest.is_positive()) s.summands.push_back(Summand{HyperfiniteDiffuse{true}, rest});
  if (s.summands.size() == 1 && s.summands.front().is_scalar()) return Rational(0);  // ℂ
  return fdim(s).value();
}

/// Two-index scenario composed step by step: start from the normalized corner
/// at o, join the corner at i rescaled by β(o)/β(i), and remove the L(F_2)
/// piece of trace γ/β(o) that the partial isometry of trace γ accounts for.
inline Rational sequential_two_index_r(const ScenarioIndex& o, const ScenarioIndex& i, const Rational& gamma) {
  Rational r = corner_fdim(o.beta, o.atoms);
  Extended si(Rational(1) + corner_fdim(i.beta, i.atoms));
  r += compress_param(si, o.beta / i.beta).value() - Rational(1);
  r -= compress_param(Extended(Rational(2)), o.beta / gamma).value() - Rational(1);
  return r;
}

/// Every step of a sequence satisfies γ*^{m_k - 1} ≺ γ*^{m_k} and the sequence increases.
template <class Precedes>
bool increasing_sequence_holds(const std::vector<std::size_t>& m, Precedes&& precedes) {
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0 || !precedes(m[k] - 1, m[k])) return false;
    if (k && m[k] <= m[k - 1]) return false;
  }
  return true;
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Built-in cross-checks reported by `freecore oracle-check`.
inline std::vector<Check> builtin_checks() {
  std::vector<Check> out;
  {
    ScenarioIndex o{"o", Rational(1, 2), {Rational(1, 2)}, std::nullopt, expr::scalars()};
    ScenarioIndex two{"2", Rational(1, 2), {}, Rational(1, 4), expr::hyperfinite()};
    CompressionScenario sc{{o, two}, 0, std::nullopt};
    auto r = compression_formula(sc).r;
    auto seq = sequential_two_index_r(o, two, Rational(1, 4));
    out.push_back({"two-index composition", r == seq && r == Rational(3, 4),
                   "formula " + r.to_string() + ", sequential " + seq.to_string()});
  }
  {
    bool ok = true;
    for (long long p = 2; p <= 9; ++p)
      for (long long q = 1; q <= 9; ++q) {
        Extended r(Rational(p + 1, 1));
        Rational t(p, q);
        ok = ok && compress_param(compress_param(r, t), t.inverse()) == r;
      }
    out.push_back({"amplification round trip", ok, "compress_param(compress_param(r, t), 1/t) = r"});
  }
  {
    bool ok = true;
    std::vector<std::vector<Rational>> cases{{Rational(2), Rational(3)}, {Rational(4), Rational(8)},
                                             {Rational(6), Rational(2, 3), Rational(9)}, {Rational(1)}};
    for (const auto& c : cases) {
      auto g = MultGroup::from_ratios(std::span<const Rational>(c));
      ok = ok && g.rank() == lattice_rank(c);
      auto again = MultGroup::from_ratios(std::span<const Rational>(g.generators()));
      ok = ok && again == g;
    }
    out.push_back({"lattice rank and regeneration", ok, "HNF rank equals elimination rank"});
  }
  {
    auto g = MultGroup::from_ratios({Rational(1, 2)});
    auto l = g.cyclic_generator();
    bool ok = l && *l == Rational(1, 2) && MultGroup::from_ratios({*l}) == g;
    out.push_back({"cyclic generator round trip", ok, l ? l->to_string() : "none"});
  }
  {
    AlgebraSpec a{"A", {scalar_atom(Rational(4, 5)), scalar_atom(Rational(1, 10)), scalar_atom(Rational(1, 10))},
                  std::nullopt};
    AlgebraSpec b{"B", {scalar_atom(Rational(7, 10)), scalar_atom(Rational(3, 10))}, std::nullopt};
    auto p = finite_free_product(a, b);
    auto lhs = fdim(p.as_spec()).value();
    auto rhs = (fdim(a) + fdim(b)).value();
    out.push_back({"free dimension additivity", lhs == rhs, lhs.to_string() + " = " + rhs.to_string()});
  }
  return out;
}

}  // namespace freecore::oracle
