#pragma once

/**
 * Structure of centralizers and compressed amalgamated free products.
 *
 *  - layer_partition / ordered_index: breadth-first layering of an index set
 *    from a distinguished o, and the (layer, position) well-ordering on it.
 *  - choose_increasing_sequence: indices m_1 < m_2 < ... with
 *    γ*^{m_k - 1} ≺ γ*^{m_k}, by forward scanning.
 *  - compression_formula: the free group parameter r of p_o P p_o.
 *  - to_canonical: rewriting into direct sums of hyperfinite algebras,
 *    amplified interpolated free group factors and symbolic free products.
 *  - centralizer_structure: dispatch on the hypotheses the inputs satisfy.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "freecore/algebra.hpp"
#include "freecore/error.hpp"
#include "freecore/fdim.hpp"
#include "freecore/freeprod.hpp"
#include "freecore/modular.hpp"
#include "freecore/structure_expr.hpp"

namespace freecore {

// ---------------------------------------------------------------------------
// Layering and ordering

using Adjacency = std::vector<std::vector<std::size_t>>;  // neighbour lists over 0..n-1

/// I_0 = {o}; I_{n+1} = unplaced indices adjacent to I_0 ∪ ... ∪ I_n.
/// Within a layer, indices keep ascending input order.
inline std::vector<std::vector<std::size_t>> layer_partition(const Adjacency& adj, std::size_t o) {
  const std::size_t n = adj.size();
  if (o >= n) throw Error(ErrorKind::InvalidScenario, "distinguished index out of range");
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : adj[i]) {
      if (j >= n) throw Error(ErrorKind::InvalidScenario, "adjacency refers to missing index " + std::to_string(j));
      if (std::find(adj[j].begin(), adj[j].end(), i) == adj[j].end())
        throw Error(ErrorKind::InvalidScenario,
                    "adjacency is not symmetric: " + std::to_string(i) + "~" + std::to_string(j));
    }

  std::vector<bool> placed(n, false);
  std::vector<std::vector<std::size_t>> layers{{o}};
  placed[o] = true;
  std::size_t count = 1;
  while (true) {
    std::vector<bool> hit(n, false);
    for (auto i : layers.back())
      for (auto j : adj[i])
        if (!placed[j]) hit[j] = true;
    std::vector<std::size_t> next;
    for (std::size_t j = 0; j < n; ++j)
      if (hit[j]) next.push_back(j);
    if (next.empty()) break;
    for (auto j : next) placed[j] = true;
    count += next.size();
    layers.push_back(std::move(next));
  }
  if (count != n) {
    std::string missing;
    for (std::size_t j = 0; j < n; ++j)
      if (!placed[j]) missing += (missing.empty() ? "" : ",") + std::to_string(j);
    throw Error(ErrorKind::DisconnectedIndex,
                "indices {" + missing + "} are unreachable from o = " + std::to_string(o) +
                    "; B ∩ Z(A) = ℂ fails");
  }
  return layers;
}

struct OrderedIndex {
  std::vector<std::size_t> sequence;                           // indices in ≺ order
  std::vector<std::pair<std::size_t, std::size_t>> position;   // index -> (layer, position in layer)

  bool precedes(std::size_t a, std::size_t b) const { return position.at(a) < position.at(b); }
};

/// (n1, m1) ≺ (n2, m2) iff n1 < n2, or n1 = n2 and m1 < m2. Layers may list
/// their members in any order; that order is the within-layer position.
inline OrderedIndex ordered_index(const std::vector<std::vector<std::size_t>>& layers) {
  OrderedIndex out;
  std::size_t n = 0;
  for (const auto& l : layers)
    for (auto i : l) n = std::max(n, i + 1);
  out.position.assign(n, {0, 0});
  for (std::size_t layer = 0; layer < layers.size(); ++layer)
    for (std::size_t pos = 0; pos < layers[layer].size(); ++pos) {
      out.sequence.push_back(layers[layer][pos]);
      out.position[layers[layer][pos]] = {layer, pos};
    }
  return out;
}

/// m_1 = 1; from m_k scan l = 1, 2, ... until γ*^{m_k + l - 1} ≺ γ*^{m_k + l}.
/// `precedes(a, b)` compares powers γ*^a and γ*^b; powers beyond `max_power`
/// are unknown, so the result may be shorter than `count`.
template <class Precedes>
std::vector<std::size_t> choose_increasing_sequence(Precedes&& precedes, std::size_t max_power, std::size_t count) {
  std::vector<std::size_t> m;
  if (count == 0 || max_power < 1) return m;
  m.push_back(1);
  while (m.size() < count) {
    std::size_t next = 0;
    for (std::size_t l = m.back() + 1; l <= max_power; ++l)
      if (precedes(l - 1, l)) { next = l; break; }
    if (next == 0) break;
    m.push_back(next);
  }
  return m;
}

/// Order on powers given by their layers, ties broken by exponent.
inline std::vector<std::size_t> choose_increasing_sequence(const std::vector<std::size_t>& layer_of_power,
                                                           std::size_t count) {
  auto precedes = [&](std::size_t a, std::size_t b) {
    return std::pair(layer_of_power[a], a) < std::pair(layer_of_power[b], b);
  };
  return choose_increasing_sequence(precedes, layer_of_power.empty() ? 0 : layer_of_power.size() - 1, count);
}

// ---------------------------------------------------------------------------
// Compression formula

struct ScenarioIndex {
  std::string id;
  Rational beta;                  // Tr_A(p_i)
  std::vector<Rational> atoms;    // α(j), j ∈ J_i
  std::optional<Rational> gamma;  // γ(i), ignored for o
  Expr q;                         // Q(i)
};

struct CompressionScenario {
  std::vector<ScenarioIndex> indices;
  std::size_t distinguished = 0;
  std::optional<Adjacency> adjacency;
};

struct GammaChoice {
  std::optional<Rational> explicit_value;  // nullopt: smallest admissible

  static GammaChoice parse(const std::string& s) {
    if (s == "smallest") return {};
    const std::string prefix = "explicit:";
    if (s.rfind(prefix, 0) == 0) return {Rational::parse(s.substr(prefix.size()))};
    throw Error(ErrorKind::ParseError, "gamma choice must be 'smallest' or 'explicit:<rational>', got '" + s + "'");
  }
};

struct CompressionResult {
  Rational r;
  Expr expr;
  std::vector<std::size_t> order;             // indices in ≺ order, o first
  std::vector<std::optional<Rational>> gamma;  // per index, as used
  std::vector<std::string> terms;             // per-index contributions to β(o)² r
};

namespace detail {

inline Rational sum_squares(const std::vector<Rational>& xs) {
  Rational s(0);
  for (const auto& x : xs) s += x * x;
  return s;
}

inline void check_index(const ScenarioIndex& ix) {
  if (!ix.beta.is_positive()) throw Error(ErrorKind::InvalidScenario, "β(" + ix.id + ") must be > 0");
  Rational total(0);
  for (const auto& a : ix.atoms) {
    if (!a.is_positive()) throw Error(ErrorKind::InvalidScenario, "atom traces α(j) in J_" + ix.id + " must be > 0");
    total += a;
  }
  if (total > ix.beta)
    throw Error(ErrorKind::InvalidScenario,
                "Σ α(j) over J_" + ix.id + " = " + total.to_string() + " exceeds β = " + ix.beta.to_string());
}

}  // namespace detail

/// r = (1/β(o)²) ((β(o)² - Σ_{J_o} α²) + Σ_{i≠o} (β(i)² - γ(i)² - Σ_{J_i} α²)),
/// with p_o P p_o ≅ Q(o) ⋆ L(F_r) ⋆ ⋆_{i≠o} [γ(i)/β(o), Q(i)_{γ(i)/β(i)}].
inline CompressionResult compression_formula(const CompressionScenario& sc, const GammaChoice& choice = {}) {
  const auto n = sc.indices.size();
  if (n == 0) throw Error(ErrorKind::InvalidScenario, "empty index set");
  if (sc.distinguished >= n) throw Error(ErrorKind::InvalidScenario, "distinguished index out of range");
  for (const auto& ix : sc.indices) detail::check_index(ix);

  CompressionResult out;
  if (sc.adjacency) {
    if (sc.adjacency->size() != n) throw Error(ErrorKind::InvalidScenario, "adjacency size differs from index count");
    out.order = ordered_index(layer_partition(*sc.adjacency, sc.distinguished)).sequence;
  } else {
    out.order.push_back(sc.distinguished);
    for (std::size_t i = 0; i < n; ++i)
      if (i != sc.distinguished) out.order.push_back(i);
  }

  const auto& o = sc.indices[sc.distinguished];
  const Rational bo2 = o.beta * o.beta;
  Rational acc = bo2 - detail::sum_squares(o.atoms);
  out.terms.push_back(o.id + ": β² - Σα² = " + acc.to_string());
  out.gamma.assign(n, std::nullopt);

  std::vector<Expr> factors{o.q};
  std::vector<Expr> pieces;
  for (std::size_t k = 1; k < out.order.size(); ++k) {
    const auto& ix = sc.indices[out.order[k]];
    std::optional<Rational> g = choice.explicit_value ? choice.explicit_value : ix.gamma;
    Rational largest_before(0);
    for (std::size_t e = 0; e < k; ++e) largest_before = std::max(largest_before, sc.indices[out.order[e]].beta);
    if (!g) {
      for (std::size_t e = 0; e < k; ++e)
        for (const auto& a : sc.indices[out.order[e]].atoms)
          if (a <= ix.beta && (!g || a < *g)) g = a;
      if (!g)
        throw Error(ErrorKind::InvalidScenario,
                    "no admissible γ(" + ix.id + "): no earlier minimal projection of trace ≤ β(" + ix.id + ")");
    }
    if (!g->is_positive() || *g > ix.beta)
      throw Error(ErrorKind::InvalidScenario, "γ(" + ix.id + ") = " + g->to_string() + " must lie in (0, β(" + ix.id +
                                                  ")] = (0, " + ix.beta.to_string() + "]");
    if (*g > largest_before)
      throw Error(ErrorKind::InvalidScenario,
                  "γ(" + ix.id + ") = " + g->to_string() + " exceeds every earlier β; no earlier subprojection fits");
    out.gamma[out.order[k]] = g;
    Rational term = ix.beta * ix.beta - *g * *g - detail::sum_squares(ix.atoms);
    out.terms.push_back(ix.id + ": β² - γ² - Σα² = " + term.to_string());
    acc += term;
    pieces.push_back(expr::compressed(*g / o.beta, expr::amplify(Extended(*g / ix.beta), ix.q)));
  }
  out.r = acc / bo2;
  if (out.r.sign() < 0)
    throw Error(ErrorKind::InvalidScenario, "free group parameter r = " + out.r.to_string() + " is negative");
  if (!out.r.is_zero()) factors.push_back(expr::free_group(Extended(out.r)));
  for (auto& p : pieces) factors.push_back(std::move(p));
  out.expr = factors.size() == 1 ? factors.front() : expr::free_product(std::move(factors));
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace detail {

inline bool is_leaf(const Expr& e, Leaf::Kind k) { return e.is<Leaf>() && e.as<Leaf>().kind == k; }

/// Free dimension of factors that merge into one interpolated free group factor.
inline std::optional<Extended> mergeable_fdim(const Expr& e) {
  if (!e.is<Leaf>()) return std::nullopt;
  const auto& l = e.as<Leaf>();
  switch (l.kind) {
    case Leaf::Kind::FreeGroup: return l.param;
    case Leaf::Kind::Hyperfinite:
      if (l.finite) return Extended(Rational(1));
      return std::nullopt;
    case Leaf::Kind::Matrix:
      if (l.n >= 2) {
        Rational n(static_cast<long long>(l.n));
        return Extended(Rational(1) - Rational(1) / (n * n));
      }
      return std::nullopt;
    default: return std::nullopt;
  }
}

inline Extended times(const Extended& a, const Extended& b) {
  if (a.is_infinite() || b.is_infinite()) return Extended::infinity();
  if (a.is_unknown() || b.is_unknown()) return Extended::unknown();
  return Extended(a.value() * b.value());
}

/// Amplification of an already canonical term that is not itself an amplification.
inline Expr amplify_canonical(const Extended& t, const Expr& y) {
  if (t == Extended(Rational(1))) return y;
  if (is_leaf(y, Leaf::Kind::FreeGroup)) {
    if (t.is_finite()) return expr::free_group(compress_param(y.as<Leaf>().param, t.value()));
    return expr::amplify(t, y);
  }
  if (is_leaf(y, Leaf::Kind::Hyperfinite)) {
    if (y.as<Leaf>().finite && t.is_finite()) return y;
    return expr::hyperfinite(false);
  }
  return expr::amplify(t, y);
}

}  // namespace detail

inline Expr to_canonical(const Expr& e) {
  if (e.is<Leaf>()) return e;

  if (e.is<AmplifyNode>()) {
    const auto& n = e.as<AmplifyNode>();
    if (n.t.is_unknown()) throw Error(ErrorKind::UnsupportedStructure, "amplification by an unknown amount");
    if (n.t.is_finite() && !n.t.value().is_positive())
      throw Error(ErrorKind::UnsupportedStructure, "amplification must be positive");
    Expr inner = to_canonical(n.inner);
    if (inner.is<AmplifyNode>()) {
      const auto& m = inner.as<AmplifyNode>();
      return detail::amplify_canonical(detail::times(n.t, m.t), m.inner);
    }
    return detail::amplify_canonical(n.t, inner);
  }

  if (e.is<CompressedNode>()) {
    const auto& n = e.as<CompressedNode>();
    if (!n.trace.is_positive()) throw Error(ErrorKind::UnsupportedStructure, "compressed piece needs positive trace");
    Expr inner = to_canonical(n.inner);
    Rational c = n.trace;
    if (inner.is<CompressedNode>()) {
      c *= inner.as<CompressedNode>().trace;
      inner = inner.as<CompressedNode>().inner;
    }
    if (c == Rational(1)) return inner;
    return expr::compressed(c, inner);
  }

  if (e.is<FreeProductNode>()) {
    std::vector<Expr> flat;
    for (const auto& f : e.as<FreeProductNode>().factors) {
      Expr c = to_canonical(f);
      if (c.is<FreeProductNode>()) {
        for (const auto& g : c.as<FreeProductNode>().factors) flat.push_back(g);
      } else {
        flat.push_back(c);
      }
    }
    std::vector<Expr> kept;
    std::vector<Extended> dims;
    for (auto& f : flat) {
      if (detail::is_leaf(f, Leaf::Kind::Matrix) && f.as<Leaf>().n == 1) continue;
      if (auto d = detail::mergeable_fdim(f)) dims.push_back(*d);
      else kept.push_back(f);
    }
    if (dims.size() >= 2) {
      Extended total = dims.front();
      for (std::size_t i = 1; i < dims.size(); ++i) total = total + dims[i];
      kept.push_back(expr::free_group(total));
    } else {
      for (auto& f : flat)
        if (detail::mergeable_fdim(f)) kept.push_back(f);
    }
    std::sort(kept.begin(), kept.end(), [](const Expr& a, const Expr& b) { return a.key() < b.key(); });
    if (kept.empty()) return expr::scalars();
    if (kept.size() == 1) return kept.front();
    return expr::free_product(std::move(kept));
  }

  if (e.is<DirectSumNode>()) {
    std::vector<std::pair<Rational, Expr>> flat;
    for (const auto& [w, part] : e.as<DirectSumNode>().parts) {
      Expr c = to_canonical(part);
      if (c.is<DirectSumNode>()) {
        for (const auto& [v, q] : c.as<DirectSumNode>().parts) flat.emplace_back(w * v, q);
      } else {
        flat.emplace_back(w, c);
      }
    }
    std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) {
      auto ka = a.second.key(), kb = b.second.key();
      if (ka != kb) return ka < kb;
      return a.first < b.first;
    });
    if (flat.size() == 1 && flat.front().first == Rational(1)) return flat.front().second;
    return expr::direct_sum(std::move(flat));
  }

  if (e.is<IndexedNode>()) {
    const auto& n = e.as<IndexedNode>();
    Expr body = to_canonical(n.body);
    if (n.group.is_trivial()) return body;
    if (n.op == IndexedNode::Op::FreeProduct &&
        (detail::is_leaf(body, Leaf::Kind::FreeGroup) ||
         (detail::is_leaf(body, Leaf::Kind::Hyperfinite) && body.as<Leaf>().finite)))
      return expr::free_group(Extended::infinity());
    return expr::indexed(n.op, n.group, body, n.amplify_by_gamma);
  }

  throw Error(ErrorKind::UnsupportedStructure,
              "amalgamated free products have no canonical rewrite; reduce them to a centralizer first");
}

/// The fundamental group of L(F_r) contains a nontrivial Γ only when r = ∞.
inline Expr dichotomy_promote(const Expr& e, const MultGroup& gamma) {
  if (gamma.is_trivial()) return e;
  if (detail::is_leaf(e, Leaf::Kind::FreeGroup)) return expr::free_group(Extended::infinity());
  if (e.is<AmplifyNode>())
    return expr::amplify(e.as<AmplifyNode>().t, dichotomy_promote(e.as<AmplifyNode>().inner, gamma));
  if (e.is<CompressedNode>())
    return expr::compressed(e.as<CompressedNode>().trace, dichotomy_promote(e.as<CompressedNode>().inner, gamma));
  return e;
}

// ---------------------------------------------------------------------------
// Centralizer of the free product state

enum class CentralizerBranch { ExtremalIIIWithTracial, AtomicWithII1Factor, AlmostPeriodicClasses, TracialFinite };

inline std::string branch_name(CentralizerBranch b) {
  switch (b) {
    case CentralizerBranch::ExtremalIIIWithTracial: return "extremal-iii-with-tracial";
    case CentralizerBranch::AtomicWithII1Factor: return "atomic-with-ii1-factor";
    case CentralizerBranch::AlmostPeriodicClasses: return "almost-periodic-classes";
    case CentralizerBranch::TracialFinite: return "tracial-finite";
  }
  return "?";
}

struct CentralizerReport {
  CentralizerBranch branch = CentralizerBranch::AlmostPeriodicClasses;
  Expr expression;
  Expr canonical;
  std::string citation;
  MultGroup gamma;
  std::optional<Expr> core;            // discrete core, up to stable isomorphism
  std::vector<Rational> expansion;     // γ of the displayed factors (M)^γ, truncated
  bool cartan_free = false;
  bool prime = false;
};

inline std::string describe_core(const Expr& core) {
  if (core.is<AmplifyNode>()) return "amplification of " + core.as<AmplifyNode>().inner.to_string();
  return core.to_string();
}

namespace detail {

inline bool is_ii1_factor(const AlgebraSpec& s) {
  if (s.tail || s.summands.size() != 1) return false;
  const auto& x = s.summands.front();
  return x.weight == Rational(1) && (x.is<AbstractII1>() || x.is<FreeGroupFactor>());
}

inline Expr ii1_factor_expr(const Summand& x) {
  if (x.is<AbstractII1>()) {
    const auto& a = x.as<AbstractII1>();
    return a.amplification == Rational(1) ? expr::abstract(a.label)
                                          : expr::amplify(Extended(a.amplification), expr::abstract(a.label));
  }
  const auto& f = x.as<FreeGroupFactor>();
  return f.amplification == Rational(1) ? expr::free_group(f.param)
                                        : expr::amplify(Extended(f.amplification), expr::free_group(f.param));
}

inline bool is_diffuse_hyperfinite(const AlgebraSpec& s) {
  if (s.tail) return false;
  return std::all_of(s.summands.begin(), s.summands.end(), [](const Summand& x) {
    return x.is<HyperfiniteDiffuse>() && x.as<HyperfiniteDiffuse>().finite;
  });
}

inline bool is_extremal_iii(const AlgebraSpec& s) {
  return !s.tail && s.summands.size() == 1 && s.summands.front().is<FullIIIWithCore>() &&
         s.summands.front().weight == Rational(1);
}

inline bool is_atomic(const AlgebraSpec& s) {
  return std::all_of(s.summands.begin(), s.summands.end(), [](const Summand& x) { return x.is<MatrixBlock>(); });
}

inline bool in_almost_periodic_classes(const AlgebraSpec& s) {
  return std::all_of(s.summands.begin(), s.summands.end(), [](const Summand& x) { return !x.is<AbstractII1>(); });
}

inline std::vector<Rational> expansion_of(const MultGroup& g, int height) {
  std::vector<Rational> out;
  for (const auto& e : g.enumerate(height)) out.push_back(e.value);
  return out;
}

}  // namespace detail

inline const char* kCiteExtremal =
    "extremal almost periodic type III factor ⋆ tracial diffuse hyperfinite algebra or II₁ factor: "
    "centralizer ≅ (M₁)_{φ₁} ⋆ L(F_∞), resp. (M₁)_{φ₁} ⋆ (⋆_{γ∈Γ}(M₂)^γ)";
inline const char* kCiteAtomic =
    "atomic type I with non-tracial state ⋆ II₁ factor with trace: centralizer ≅ ⋆_{γ∈Γ}(M₂)^γ";
inline const char* kCiteClasses =
    "hyperfinite / amplified interpolated free group factor / full type III with core L(F_∞) inputs, "
    "one state non-tracial: discrete core stably ≅ L(F_∞), centralizer ≅ L(F_∞)";
inline const char* kCiteTracial = "tracial free product: M_d ⊕ L(F_r) with r fixed by free dimension balance";
inline const char* kCiteCartan = "discrete core and centralizer have no Cartan subalgebra";
inline const char* kCitePrime = "discrete core and centralizer are prime";

inline CentralizerReport centralizer_structure(const AlgebraSpec& a, const AlgebraSpec& b, int height = 3) {
  require_valid(a);
  require_valid(b);
  reject_dim22(a, b);

  CentralizerReport out;
  const bool tracial = is_tracial(a) && is_tracial(b);
  out.gamma = sd_invariant(a, b);
  out.cartan_free = out.prime = !tracial;

  if (tracial) {
    if (!finite_tracial_kinds(a) || !finite_tracial_kinds(b))
      throw Error(ErrorKind::HypothesesNotRecognized,
                  "both states are tracial and some summand is outside the free dimension calculus");
    out.branch = CentralizerBranch::TracialFinite;
    out.expression = finite_free_product(a, b).expr();
    out.canonical = to_canonical(out.expression);
    out.citation = kCiteTracial;
    return out;
  }

  using Op = IndexedNode::Op;
  for (int swap = 0; swap < 2; ++swap) {
    const auto& x = swap ? b : a;
    const auto& y = swap ? a : b;
    const std::string xi = swap ? "₂" : "₁";
    if (detail::is_extremal_iii(x) && is_tracial(y) && (detail::is_diffuse_hyperfinite(y) || detail::is_ii1_factor(y))) {
      out.branch = CentralizerBranch::ExtremalIIIWithTracial;
      auto centralizer = expr::label("(M" + xi + ")_{φ" + xi + "}");
      Expr other;
      if (detail::is_diffuse_hyperfinite(y)) {
        other = expr::free_group(Extended::infinity());
      } else {
        auto body = detail::ii1_factor_expr(y.summands.front());
        other = expr::indexed(Op::FreeProduct, out.gamma, body, true);
        out.expansion = detail::expansion_of(out.gamma, height);
      }
      out.expression = expr::free_product({centralizer, other});
      // The centralizer of the type III input is L(F_∞) (its core is L(F_∞) ⊗̄ B(ℓ²)).
      out.canonical = to_canonical(expr::free_product({expr::free_group(Extended::infinity()), other}));
      out.citation = kCiteExtremal;
      out.core = expr::amplify(Extended::infinity(), out.canonical);
      return out;
    }
  }
  for (int swap = 0; swap < 2; ++swap) {
    const auto& x = swap ? b : a;
    const auto& y = swap ? a : b;
    if (detail::is_atomic(x) && !is_tracial(x) && detail::is_ii1_factor(y)) {
      out.branch = CentralizerBranch::AtomicWithII1Factor;
      auto body = detail::ii1_factor_expr(y.summands.front());
      out.expression = expr::indexed(Op::FreeProduct, out.gamma, body, true);
      out.canonical = to_canonical(out.expression);
      out.expansion = detail::expansion_of(out.gamma, height);
      out.citation = kCiteAtomic;
      out.core = expr::amplify(Extended::infinity(), out.canonical);
      return out;
    }
  }
  if (detail::in_almost_periodic_classes(a) && detail::in_almost_periodic_classes(b)) {
    out.branch = CentralizerBranch::AlmostPeriodicClasses;
    out.expression = expr::free_group(Extended::unknown());
    out.canonical = dichotomy_promote(to_canonical(out.expression), out.gamma);
    out.citation = kCiteClasses;
    out.core = expr::amplify(Extended::infinity(), out.canonical);
    return out;
  }
  throw Error(ErrorKind::HypothesesNotRecognized,
              "no structure result covers '" + a.name + "' ⋆ '" + b.name +
                  "': abstract II₁ summands need an atomic non-tracial or extremal type III partner");
}

}  // namespace freecore
