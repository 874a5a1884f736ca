#pragma once

// Hand-rolled generators for property tests. Every generator draws from an
// explicit mt19937_64 so failures reproduce from the printed seed.

#include <cstdint>
#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "freecore/freecore.hpp"

namespace testgen {

using freecore::AlgebraSpec;
using freecore::Rational;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); }
  bool coin() { return uniform(0, 1) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[static_cast<std::size_t>(uniform(0, (long long)xs.size() - 1))]; }

  Rational rational(long long max_num, long long max_den) {
    return Rational(uniform(-max_num, max_num), uniform(1, max_den));
  }
  Rational positive(long long max_num, long long max_den) { return Rational(uniform(1, max_num), uniform(1, max_den)); }

  /// n positive parts with common denominator `den` summing to `total`.
  std::vector<Rational> partition(std::size_t n, long long den, const Rational& total = Rational(1)) {
    std::vector<long long> cuts;
    for (long long k = 1; k < den; ++k) cuts.push_back(k);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(n - 1);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> out;
    long long prev = 0;
    for (auto c : cuts) {
      out.push_back(total * Rational(c - prev, den));
      prev = c;
    }
    out.push_back(total * Rational(den - prev, den));
    return out;
  }

  /// Small ratios built from the primes 2, 3, 5.
  Rational smooth_ratio(int max_exp = 2) {
    Rational r(1);
    for (long long p : {2, 3, 5}) r *= Rational(p).pow(uniform(-max_exp, max_exp));
    return r;
  }

  freecore::MultGroup group(std::size_t max_gens = 2) {
    std::vector<Rational> g;
    auto n = static_cast<std::size_t>(uniform(1, (long long)max_gens));
    while (g.size() < n) {
      auto x = smooth_ratio();
      if (x != Rational(1)) g.push_back(x);
    }
    return freecore::MultGroup::from_ratios(std::span<const Rational>(g));
  }

  /// Matrix block of total weight w whose eigenvalue ratios are products of `ratios`.
  freecore::Summand block(const Rational& w, std::size_t n, const std::vector<Rational>& ratios) {
    std::vector<Rational> rel{Rational(1)};
    while (rel.size() < n) rel.push_back(rel.back() * (ratios.empty() ? Rational(1) : pick(ratios)));
    Rational s(0);
    for (const auto& x : rel) s += x;
    std::vector<Rational> ev;
    for (const auto& x : rel) ev.push_back(w * x / s);
    return freecore::matrix_block(ev);
  }

  /// Atomic spec: `n` blocks of size ≤ max_size with spectral ratios from `ratios`.
  AlgebraSpec atomic(std::size_t n, std::size_t max_size, const std::vector<Rational>& ratios, std::string name = "A") {
    AlgebraSpec s{std::move(name), {}, std::nullopt};
    for (const auto& w : partition(n, 24)) s.summands.push_back(block(w, (std::size_t)uniform(1, (long long)max_size), ratios));
    if (freecore::dimension(s) == freecore::Extended(Rational(1))) s.summands.front() = block(Rational(1), 2, ratios);
    return s;
  }

  /// Finite tracial spec mixing scalar atoms, tracial blocks, R and L(F_r).
  AlgebraSpec tracial(std::string name = "T") {
    AlgebraSpec s{std::move(name), {}, std::nullopt};
    auto n = (std::size_t)uniform(1, 4);
    for (const auto& w : partition(n, 20)) {
      switch (uniform(0, 3)) {
        case 0: s.summands.push_back(freecore::scalar_atom(w)); break;
        case 1: s.summands.push_back(freecore::tracial_block((std::size_t)uniform(2, 3), w)); break;
        case 2: s.summands.push_back(freecore::Summand{freecore::HyperfiniteDiffuse{true}, w}); break;
        default:
          s.summands.push_back(freecore::Summand{
              freecore::FreeGroupFactor{freecore::Extended(Rational(uniform(3, 9), 2)), Rational(1)}, w});
      }
    }
    if (freecore::dimension(s) == freecore::Extended(Rational(1))) s.summands = {freecore::tracial_block(2, Rational(1))};
    return s;
  }

  /// Random well-formed term without amalgamated nodes.
  freecore::Expr expr(int depth) {
    using freecore::Extended;
    namespace ex = freecore::expr;
    if (depth <= 0 || uniform(0, 3) == 0) {
      switch (uniform(0, 4)) {
        case 0: return ex::matrix((std::size_t)uniform(1, 3));
        case 1: return ex::hyperfinite(uniform(0, 3) != 0);
        case 2: return ex::free_group(coin() ? Extended(Rational(uniform(3, 8), 2)) : Extended::infinity());
        case 3: return ex::abstract(coin() ? "N" : "M₂");
        default: return ex::free_group(Extended(Rational(2)));
      }
    }
    switch (uniform(0, 4)) {
      case 0: {
        std::vector<std::pair<Rational, freecore::Expr>> parts;
        for (const auto& w : partition((std::size_t)uniform(1, 3), 12)) parts.emplace_back(w, expr(depth - 1));
        return ex::direct_sum(std::move(parts));
      }
      case 1: {
        std::vector<freecore::Expr> fs;
        for (int k = 0, n = (int)uniform(1, 3); k < n; ++k) fs.push_back(expr(depth - 1));
        return ex::free_product(std::move(fs));
      }
      case 2: {
        static const std::vector<Rational> ts{Rational(1, 2), Rational(2), Rational(3, 2), Rational(1)};
        auto t = uniform(0, 4) == 0 ? Extended::infinity() : Extended(pick(ts));
        return ex::amplify(t, expr(depth - 1));
      }
      case 3: {
        static const std::vector<Rational> cs{Rational(1, 2), Rational(1), Rational(3, 4), Rational(2)};
        return ex::compressed(pick(cs), expr(depth - 1));
      }
      default: {
        auto g = coin() ? freecore::MultGroup::from_ratios({Rational(2)}) : freecore::MultGroup::trivial();
        return ex::indexed(coin() ? freecore::IndexedNode::Op::FreeProduct : freecore::IndexedNode::Op::DirectSum, g,
                           expr(depth - 1), coin());
      }
    }
  }

  /// Connected graph on n vertices: a random spanning tree plus extra edges.
  freecore::Adjacency connected_graph(std::size_t n, std::size_t extra) {
    freecore::Adjacency adj(n);
    auto link = [&](std::size_t a, std::size_t b) {
      if (a == b || std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) return;
      adj[a].push_back(b);
      adj[b].push_back(a);
    };
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t k = 1; k < n; ++k) link(perm[k], perm[(std::size_t)uniform(0, (long long)k - 1)]);
    for (std::size_t k = 0; k < extra; ++k)
      link((std::size_t)uniform(0, (long long)n - 1), (std::size_t)uniform(0, (long long)n - 1));
    return adj;
  }

  /// Layers of γ*^0, ..., γ*^max: γ*^0 in I_0, γ* in I_1, neighbours differ by at most one layer.
  std::vector<std::size_t> power_layers(std::size_t max) {
    std::vector<std::size_t> layer{0, 1};
    while (layer.size() <= max) {
      long long next = (long long)layer.back() + uniform(-1, 1);
      layer.push_back((std::size_t)std::max<long long>(next, 1));
    }
    return layer;
  }
};

}  // namespace testgen
