#pragma once

/**
 * Algebras with a faithful normal state, described as countable direct sums.
 *
 * Each Summand is a central piece carrying the state mass of its unit. Matrix
 * blocks hold the eigenvalues of the density of the state restricted to the
 * block (these sum to the block weight). Infinite families are given by a
 * finite prefix plus a TailRule; the engine materializes as many tail blocks
 * as a truncation height asks for.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freecore/error.hpp"
#include "freecore/mult_group.hpp"
#include "freecore/rational.hpp"

namespace freecore {

struct MatrixBlock {
  std::vector<Rational> eigenvalues;  // density eigenvalues, one per diagonal matrix unit
  std::size_t size() const { return eigenvalues.size(); }
};

struct HyperfiniteDiffuse {
  bool finite = true;  // false: semifinite, infinite (type II_inf / I_inf style)
};

struct FreeGroupFactor {
  Extended param = Rational(2);
  Rational amplification{1};
};

struct AbstractII1 {
  std::string label;
  Rational amplification{1};
};

struct FullIIIWithCore {
  std::vector<Rational> sd_generators;
  MultGroup sd;
};

using SummandKind = std::variant<MatrixBlock, HyperfiniteDiffuse, FreeGroupFactor, AbstractII1, FullIIIWithCore>;

struct Summand {
  SummandKind kind;
  Rational weight{1};

  template <class T>
  bool is() const { return std::holds_alternative<T>(kind); }
  template <class T>
  const T& as() const { return std::get<T>(kind); }

  bool is_scalar() const { return is<MatrixBlock>() && as<MatrixBlock>().size() == 1; }
  bool is_diffuse() const { return !is<MatrixBlock>(); }
};

inline std::string kind_name(const Summand& s) {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, MatrixBlock>) return "matrix";
        else if constexpr (std::is_same_v<T, HyperfiniteDiffuse>) return "hyperfinite";
        else if constexpr (std::is_same_v<T, FreeGroupFactor>) return "free_group_factor";
        else if constexpr (std::is_same_v<T, AbstractII1>) return "abstract_ii1";
        else return "full_iii";
      },
      s.kind);
}

inline Summand matrix_block(std::vector<Rational> eigenvalues) {
  Rational w(0);
  for (const auto& e : eigenvalues) w += e;
  return Summand{MatrixBlock{std::move(eigenvalues)}, w};
}

inline Summand tracial_block(std::size_t n, const Rational& weight) {
  return Summand{MatrixBlock{std::vector<Rational>(n, weight / Rational(static_cast<long long>(n)))}, weight};
}

inline Summand scalar_atom(const Rational& weight) { return Summand{MatrixBlock{{weight}}, weight}; }

inline Summand full_iii(std::vector<Rational> sd_generators, const Rational& weight = Rational(1)) {
  FullIIIWithCore f;
  f.sd = MultGroup::from_ratios(std::span<const Rational>(sd_generators));
  f.sd_generators = std::move(sd_generators);
  return Summand{std::move(f), weight};
}

/// Tail blocks k = 1, 2, ...: a 2x2 block of weight scale*ratio^k whose density
/// eigenvalues are proportional to (1, gamma_k), where gamma_1, gamma_2, ...
/// lists the elements of the group generated by gamma_generators lying in (0,1),
/// in enumeration order.
struct TailRule {
  std::vector<Rational> gamma_generators;
  Rational scale{1};
  Rational ratio{Rational(1, 2)};

  MultGroup group() const { return MultGroup::from_ratios(std::span<const Rational>(gamma_generators)); }

  Rational total_weight() const { return scale * ratio / (Rational(1) - ratio); }

  /// The first `count` elements of the group below 1, in (norm, coordinate) order.
  std::vector<Rational> gammas(std::size_t count) const {
    auto g = group();
    std::vector<Rational> out;
    if (g.is_trivial()) return out;
    for (int h = 1; out.size() < count; ++h) {
      out.clear();
      for (const auto& e : g.enumerate(h))
        if (e.value < Rational(1)) out.push_back(e.value);
    }
    out.resize(count);
    return out;
  }

  /// Number of tail blocks materialized at a truncation height (at least height 1).
  std::size_t depth_for(int height) const {
    auto g = group();
    std::size_t n = 0;
    for (const auto& e : g.enumerate(std::max(height, 1)))
      if (e.value < Rational(1)) ++n;
    return n;
  }

  Summand block(std::size_t k, const Rational& gamma) const {
    Rational w = scale * ratio.pow(static_cast<long long>(k));
    Rational c = w / (Rational(1) + gamma);
    return Summand{MatrixBlock{{c, c * gamma}}, w};
  }
};

struct AlgebraSpec {
  std::string name;
  std::vector<Summand> summands;
  std::optional<TailRule> tail;
};

/// Prefix summands plus the tail blocks materialized at `height`.
inline std::vector<Summand> materialize(const AlgebraSpec& spec, int height) {
  std::vector<Summand> out = spec.summands;
  if (spec.tail) {
    auto gammas = spec.tail->gammas(spec.tail->depth_for(height));
    for (std::size_t k = 0; k < gammas.size(); ++k) out.push_back(spec.tail->block(k + 1, gammas[k]));
  }
  return out;
}

/// Dimension of the algebra; infinite if anything is diffuse or a tail is present.
inline Extended dimension(const AlgebraSpec& spec) {
  if (spec.tail) return Extended::infinity();
  long long d = 0;
  for (const auto& s : spec.summands) {
    if (!s.is<MatrixBlock>()) return Extended::infinity();
    auto n = static_cast<long long>(s.as<MatrixBlock>().size());
    d += n * n;
  }
  return Extended(Rational(d));
}

struct Violation {
  std::optional<std::size_t> summand;  // nullopt for whole-spec rules
  std::string rule;
  std::string detail;

  std::string to_string() const {
    std::string where = summand ? "summand " + std::to_string(*summand) : std::string("spec");
    return where + ": " + rule + (detail.empty() ? "" : " (" + detail + ")");
  }
};

inline std::vector<Violation> validate(const AlgebraSpec& spec) {
  std::vector<Violation> out;
  if (spec.summands.empty() && !spec.tail) out.push_back({std::nullopt, "at least one summand", ""});

  Rational total(0);
  for (std::size_t i = 0; i < spec.summands.size(); ++i) {
    const auto& s = spec.summands[i];
    if (!s.weight.is_positive() || s.weight > Rational(1))
      out.push_back({i, "weight in (0,1]", "weight " + s.weight.to_string()});
    total += s.weight;
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, MatrixBlock>) {
            if (k.eigenvalues.empty()) out.push_back({i, "matrix block size >= 1", ""});
            Rational sum(0);
            bool positive = true;
            for (const auto& e : k.eigenvalues) {
              sum += e;
              positive = positive && e.is_positive();
            }
            if (!positive) out.push_back({i, "eigenvalues > 0", ""});
            if (sum != s.weight)
              out.push_back({i, "eigenvalues sum to weight",
                             "sum " + sum.to_string() + " != weight " + s.weight.to_string()});
          } else if constexpr (std::is_same_v<T, FreeGroupFactor>) {
            if (k.param.is_unknown() || (k.param.is_finite() && k.param.value() <= Rational(1)))
              out.push_back({i, "free group parameter > 1 or ∞", "param " + k.param.to_string()});
            if (!k.amplification.is_positive()) out.push_back({i, "amplification > 0", ""});
          } else if constexpr (std::is_same_v<T, AbstractII1>) {
            if (k.label.empty()) out.push_back({i, "abstract factor label nonempty", ""});
            if (!k.amplification.is_positive()) out.push_back({i, "amplification > 0", ""});
          } else if constexpr (std::is_same_v<T, FullIIIWithCore>) {
            if (k.sd.is_trivial()) out.push_back({i, "full type III summand has nontrivial Sd", ""});
          }
        },
        s.kind);
  }

  if (spec.tail) {
    const auto& t = *spec.tail;
    bool ok = true;
    if (!t.scale.is_positive()) { out.push_back({std::nullopt, "tail scale > 0", ""}); ok = false; }
    if (!t.ratio.is_positive() || t.ratio >= Rational(1)) {
      out.push_back({std::nullopt, "tail ratio in (0,1)", ""});
      ok = false;
    }
    for (const auto& g : t.gamma_generators)
      if (!g.is_positive()) { out.push_back({std::nullopt, "tail generators positive", ""}); ok = false; }
    if (ok && t.group().is_trivial())
      out.push_back({std::nullopt, "tail group nontrivial", "generators generate {1}"});
    if (ok) total += t.total_weight();
  }

  if (total != Rational(1))
    out.push_back({std::nullopt, "weights sum to 1", "sum " + total.to_string()});
  if (dimension(spec) == Extended(Rational(1)))
    out.push_back({std::nullopt, "non-trivial (not 1-dimensional)", ""});
  return out;
}

inline void require_valid(const AlgebraSpec& spec) {
  auto v = validate(spec);
  if (v.empty()) return;
  std::string msg = "spec '" + spec.name + "' invalid: ";
  for (std::size_t i = 0; i < v.size(); ++i) msg += (i ? "; " : "") + v[i].to_string();
  throw Error(ErrorKind::ValidationFailed, msg);
}

inline bool is_tracial_block(const MatrixBlock& b) {
  return std::all_of(b.eigenvalues.begin(), b.eigenvalues.end(),
                     [&](const Rational& e) { return e == b.eigenvalues.front(); });
}

/// True iff the state is a trace: every block has equal eigenvalues and nothing type III is present.
inline bool is_tracial(const AlgebraSpec& spec) {
  if (spec.tail) return false;
  for (const auto& s : spec.summands) {
    if (s.is<FullIIIWithCore>()) return false;
    if (s.is<MatrixBlock>() && !is_tracial_block(s.as<MatrixBlock>())) return false;
  }
  return true;
}

/// Reference to a projection: a whole summand, or a range of diagonal matrix units in a block.
struct ProjectionRef {
  std::size_t summand = 0;
  std::optional<std::pair<std::size_t, std::size_t>> diagonal;  // [first, last)
};

inline Rational state_of(const AlgebraSpec& spec, const ProjectionRef& p) {
  if (p.summand >= spec.summands.size())
    throw Error(ErrorKind::ValidationFailed, "projection refers to missing summand " + std::to_string(p.summand));
  const auto& s = spec.summands[p.summand];
  if (!p.diagonal) return s.weight;
  if (!s.is<MatrixBlock>())
    throw Error(ErrorKind::ValidationFailed, "diagonal range on a non-matrix summand");
  const auto& ev = s.as<MatrixBlock>().eigenvalues;
  auto [first, last] = *p.diagonal;
  if (first >= last || last > ev.size()) throw Error(ErrorKind::ValidationFailed, "empty or out-of-range diagonal");
  Rational w(0);
  for (auto k = first; k < last; ++k) w += ev[k];
  return w;
}

struct ScalarSummand {
  ProjectionRef ref;
  Rational weight;
};

/// Size-1 blocks (central projections p with Mp = Cp), heaviest first.
inline std::vector<ScalarSummand> scalar_central_summands(const AlgebraSpec& spec) {
  std::vector<ScalarSummand> out;
  for (std::size_t i = 0; i < spec.summands.size(); ++i)
    if (spec.summands[i].is_scalar()) out.push_back({ProjectionRef{i, std::nullopt}, spec.summands[i].weight});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.weight > b.weight; });
  return out;
}

/// Some summand is diffuse and carries the whole state mass.
inline bool has_full_weight_diffuse(const AlgebraSpec& spec) {
  return std::any_of(spec.summands.begin(), spec.summands.end(),
                     [](const Summand& s) { return s.is_diffuse() && s.weight == Rational(1); });
}

}  // namespace freecore
