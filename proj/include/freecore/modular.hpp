#pragma once

// Modular spectral data: point-spectrum ratios, the Sd-invariant, the T-set,
// and the type of the diffuse factor summand of a free product.

#include <set>
#include <string>
#include <vector>

#include "freecore/algebra.hpp"
#include "freecore/mult_group.hpp"

namespace freecore {

/// Ratios lambda_a / lambda_b within each block (tail blocks up to `height`),
/// the Sd generators of full type III summands and their inverses, and 1.
inline std::set<Rational> point_spectrum_ratios(const AlgebraSpec& spec, int height = 3) {
  std::set<Rational> out{Rational(1)};
  for (const auto& s : materialize(spec, height)) {
    if (s.is<MatrixBlock>()) {
      const auto& ev = s.as<MatrixBlock>().eigenvalues;
      for (const auto& a : ev)
        for (const auto& b : ev) out.insert(a / b);
    } else if (s.is<FullIIIWithCore>()) {
      for (const auto& g : s.as<FullIIIWithCore>().sd.generators()) {
        out.insert(g);
        out.insert(g.inverse());
      }
    }
  }
  return out;
}

/// Ratios that generate the spectral group exactly, independent of truncation.
inline std::vector<Rational> spectral_generators(const AlgebraSpec& spec) {
  std::set<Rational> gens;
  for (const auto& s : spec.summands) {
    if (s.is<MatrixBlock>()) {
      const auto& ev = s.as<MatrixBlock>().eigenvalues;
      for (const auto& e : ev) gens.insert(e / ev.front());
    } else if (s.is<FullIIIWithCore>()) {
      for (const auto& g : s.as<FullIIIWithCore>().sd.generators()) gens.insert(g);
    }
  }
  if (spec.tail)
    for (const auto& g : spec.tail->gamma_generators) gens.insert(g);
  return {gens.begin(), gens.end()};
}

inline MultGroup sd_invariant(const AlgebraSpec& a, const AlgebraSpec& b) {
  auto gens = spectral_generators(a);
  auto more = spectral_generators(b);
  gens.insert(gens.end(), more.begin(), more.end());
  return MultGroup::from_ratios(std::span<const Rational>(gens));
}

struct TSet {
  enum class Kind { FullLine, Cyclic, Trivial };
  Kind kind = Kind::FullLine;
  std::optional<Rational> lambda;  // set for Cyclic

  // Period printed symbolically; never evaluated as a float.
  std::string to_string() const {
    switch (kind) {
      case Kind::FullLine: return "ℝ";
      case Kind::Cyclic: return "(2π/|ln(" + lambda->to_string() + ")|)ℤ";
      case Kind::Trivial: return "{0}";
    }
    return "?";
  }

  friend bool operator==(const TSet&, const TSet&) = default;
};

inline TSet t_set_of(const MultGroup& gamma) {
  if (gamma.is_trivial()) return {TSet::Kind::FullLine, std::nullopt};
  if (auto l = gamma.cyclic_generator()) return {TSet::Kind::Cyclic, l};
  return {TSet::Kind::Trivial, std::nullopt};
}

/// {t : sigma_t = id for both states}: gamma^{it} = 1 for every spectral ratio gamma.
inline TSet t_set(const AlgebraSpec& a, const AlgebraSpec& b) { return t_set_of(sd_invariant(a, b)); }

struct FactorType {
  enum class Kind { II1, IIIlambda, III1 };
  Kind kind = Kind::II1;
  std::optional<Rational> lambda;

  std::string to_string() const {
    switch (kind) {
      case Kind::II1: return "II_1";
      case Kind::IIIlambda: return "III_λ (λ = " + lambda->to_string() + ")";
      case Kind::III1: return "III_1";
    }
    return "?";
  }

  friend bool operator==(const FactorType&, const FactorType&) = default;
};

inline bool is_dim22_pair(const AlgebraSpec& a, const AlgebraSpec& b) {
  return dimension(a) == Extended(Rational(2)) && dimension(b) == Extended(Rational(2));
}

inline void reject_dim22(const AlgebraSpec& a, const AlgebraSpec& b) {
  if (is_dim22_pair(a, b))
    throw Error(ErrorKind::Dim22Rejected,
                "free product requires (dim(M₁),dim(M₂)) ≠ (2,2); got '" + a.name + "' and '" + b.name + "'");
}

/// II_1 iff both states are traces; III_lambda for cyclic Sd; III_1 otherwise.
inline FactorType classify_diffuse_type(const AlgebraSpec& a, const AlgebraSpec& b) {
  reject_dim22(a, b);
  if (is_tracial(a) && is_tracial(b)) return {FactorType::Kind::II1, std::nullopt};
  auto gamma = sd_invariant(a, b);
  if (auto l = gamma.cyclic_generator()) return {FactorType::Kind::IIIlambda, l};
  return {FactorType::Kind::III1, std::nullopt};
}

}  // namespace freecore
