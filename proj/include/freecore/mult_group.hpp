#pragma once

/**
 * Finitely generated subgroups of the positive rationals under multiplication.
 *
 * A positive rational x = prod p^e_p is identified with its prime exponent
 * vector, so a subgroup is an integer lattice. The lattice basis is kept in
 * Hermite normal form over the ascending list of primes that actually occur,
 * which makes equality of groups equality of representations.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freecore/error.hpp"
#include "freecore/rational.hpp"

namespace freecore {

using Exponents = std::vector<std::int64_t>;

inline constexpr std::uint64_t kDefaultPrimeBound = 1'000'000;

/// Trial-division bound: FREECORE_PRIME_BOUND if set to a positive integer, else 10^6.
inline std::uint64_t default_prime_bound() {
  if (const char* env = std::getenv("FREECORE_PRIME_BOUND")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2) return v;
  }
  return kDefaultPrimeBound;
}

namespace detail {

inline void add_factor(std::map<std::uint64_t, std::int64_t>& out, std::uint64_t p, std::int64_t e) {
  out[p] += e;
  if (out[p] == 0) out.erase(p);
}

// Factors n >= 1 by trial division; every prime factor must be <= bound.
inline void factor_into(BigInt n, std::int64_t sign, std::uint64_t bound,
                        std::map<std::uint64_t, std::int64_t>& out) {
  auto too_large = [&] {
    return Error(ErrorKind::PrimeTooLarge,
                 "prime factor above the factorization bound " + std::to_string(bound));
  };
  std::uint64_t p = 2;
  // Big values: divide out small primes with bignum arithmetic until it fits.
  while (n > std::numeric_limits<std::uint64_t>::max()) {
    if (p > bound) throw too_large();
    std::int64_t e = 0;
    while (n % p == 0) { n /= p; ++e; }
    if (e) add_factor(out, p, sign * e);
    p = (p == 2) ? 3 : p + 2;
  }
  auto m = n.convert_to<std::uint64_t>();
  for (; m > 1 && p <= bound && p <= m / p; p = (p == 2) ? 3 : p + 2) {
    std::int64_t e = 0;
    while (m % p == 0) { m /= p; ++e; }
    if (e) add_factor(out, p, sign * e);
  }
  if (m > 1) {
    // m is prime when p*p > m; otherwise trial division stopped at the bound.
    if (m > bound || p <= m / p) throw too_large();
    add_factor(out, m, sign);
  }
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::UnsupportedStructure, "exponent lattice overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error(ErrorKind::UnsupportedStructure, "exponent lattice overflow");
  return r;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline void row_axpy(Exponents& dst, std::int64_t q, const Exponents& src) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = checked_sub(dst[k], checked_mul(q, src[k]));
}

// In-place Hermite normal form (row style): echelon, positive pivots,
// entries above each pivot reduced into [0, pivot). Zero rows are dropped.
inline std::vector<Exponents> hermite_normal_form(std::vector<Exponents> rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        row_axpy(rows[i], rows[i][c] / rows[r][c], rows[r]);
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows.size() <= r || rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) row_axpy(rows[i], floor_div(rows[i][c], rows[r][c]), rows[r]);
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace detail

/// Prime factorization of a positive rational as prime -> exponent (zero exponents omitted).
inline std::map<std::uint64_t, std::int64_t> factor_rational(const Rational& x,
                                                             std::uint64_t bound = default_prime_bound()) {
  if (!x.is_positive())
    throw Error(ErrorKind::NonPositiveRatio, "ratio " + x.to_string() + " is not a positive rational");
  std::map<std::uint64_t, std::int64_t> out;
  detail::factor_into(x.numerator(), +1, bound, out);
  detail::factor_into(x.denominator(), -1, bound, out);
  return out;
}

/// An element of a MultGroup: basis coordinates, prime exponents, and its value.
struct GroupElement {
  Exponents coords;     // coefficients over the parent basis
  Exponents exponents;  // over the parent's primes
  Rational value{1};

  bool is_identity() const { return value == Rational(1); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.exponents == b.exponents; }
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) { return a.exponents <=> b.exponents; }
};

class MultGroup {
 public:
  MultGroup() = default;

  static MultGroup trivial() { return {}; }

  /// Smallest subgroup of Q+^x containing every ratio.
  static MultGroup from_ratios(std::span<const Rational> ratios, std::uint64_t bound = default_prime_bound()) {
    std::vector<std::map<std::uint64_t, std::int64_t>> facts;
    std::vector<std::uint64_t> primes;
    for (const auto& x : ratios) {
      facts.push_back(factor_rational(x, bound));
      for (const auto& [p, e] : facts.back()) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    std::vector<Exponents> rows;
    for (const auto& f : facts) {
      if (f.empty()) continue;
      Exponents row(primes.size(), 0);
      for (const auto& [p, e] : f)
        row[static_cast<std::size_t>(std::lower_bound(primes.begin(), primes.end(), p) - primes.begin())] = e;
      rows.push_back(std::move(row));
    }
    MultGroup g;
    g.primes_ = std::move(primes);
    g.basis_ = detail::hermite_normal_form(std::move(rows), g.primes_.size());
    g.drop_unused_primes();
    return g;
  }

  static MultGroup from_ratios(std::initializer_list<Rational> ratios) {
    std::vector<Rational> v(ratios);
    return from_ratios(std::span<const Rational>(v));
  }

  const std::vector<std::uint64_t>& primes() const { return primes_; }
  const std::vector<Exponents>& basis() const { return basis_; }
  std::size_t rank() const { return basis_.size(); }
  bool is_trivial() const { return basis_.empty(); }

  /// Values of the basis vectors, in basis order.
  std::vector<Rational> generators() const {
    std::vector<Rational> out;
    for (const auto& row : basis_) out.push_back(value_of(row));
    return out;
  }

  Rational value_of(const Exponents& exps) const {
    Rational v(1);
    for (std::size_t k = 0; k < primes_.size(); ++k)
      if (exps[k] != 0) v *= Rational(static_cast<long long>(primes_[k])).pow(exps[k]);
    return v;
  }

  GroupElement element_from_coords(const Exponents& coords) const {
    GroupElement g;
    g.coords = coords;
    g.exponents.assign(primes_.size(), 0);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t k = 0; k < primes_.size(); ++k)
        g.exponents[k] += coords[i] * basis_[i][k];
    g.value = value_of(g.exponents);
    return g;
  }

  GroupElement identity() const { return element_from_coords(Exponents(rank(), 0)); }

  /// The element equal to x, if x lies in the group.
  std::optional<GroupElement> element_of(const Rational& x, std::uint64_t bound = default_prime_bound()) const {
    auto f = factor_rational(x, bound);
    Exponents v(primes_.size(), 0);
    for (const auto& [p, e] : f) {
      auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
      if (it == primes_.end() || *it != p) return std::nullopt;
      v[static_cast<std::size_t>(it - primes_.begin())] = e;
    }
    Exponents coords;
    Exponents rest = v;
    for (const auto& row : basis_) {
      std::size_t c = pivot_column(row);
      for (std::size_t k = 0; k < c; ++k)
        if (rest[k] != 0) return std::nullopt;
      if (rest[c] % row[c] != 0) return std::nullopt;
      std::int64_t q = rest[c] / row[c];
      detail::row_axpy(rest, q, row);
      coords.push_back(q);
    }
    for (auto e : rest)
      if (e != 0) return std::nullopt;
    GroupElement g;
    g.coords = std::move(coords);
    g.exponents = std::move(v);
    g.value = x;
    return g;
  }

  bool contains(const Rational& x) const { return element_of(x).has_value(); }

  bool contains(const MultGroup& sub) const {
    for (const auto& gen : sub.generators())
      if (!contains(gen)) return false;
    return true;
  }

  /// Elements with coordinate max-norm <= height, sorted by (norm, coordinates).
  std::vector<GroupElement> enumerate(int height) const {
    if (height < 0) height = 0;
    std::vector<Exponents> all{Exponents{}};
    for (std::size_t i = 0; i < rank(); ++i) {
      std::vector<Exponents> next;
      for (const auto& prefix : all)
        for (std::int64_t c = -height; c <= height; ++c) {
          auto e = prefix;
          e.push_back(c);
          next.push_back(std::move(e));
        }
      all = std::move(next);
    }
    auto norm = [](const Exponents& e) {
      std::int64_t n = 0;
      for (auto x : e) n = std::max<std::int64_t>(n, std::llabs(x));
      return n;
    };
    std::stable_sort(all.begin(), all.end(), [&](const Exponents& a, const Exponents& b) {
      auto na = norm(a), nb = norm(b);
      return na != nb ? na < nb : a < b;
    });
    std::vector<GroupElement> out;
    out.reserve(all.size());
    for (const auto& c : all) out.push_back(element_from_coords(c));
    return out;
  }

  /// For a rank-one group, its generator lying in (0,1).
  std::optional<Rational> cyclic_generator() const {
    if (rank() != 1) return std::nullopt;
    Rational g = value_of(basis_[0]);
    return g < Rational(1) ? g : g.inverse();
  }

  std::string to_string() const {
    if (is_trivial()) return "{1}";
    auto gens = generators();
    if (gens.size() == 1) return "(" + gens[0].to_string() + ")^ℤ";
    std::string s = "⟨";
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].to_string();
    return s + "⟩";
  }

  friend bool operator==(const MultGroup& a, const MultGroup& b) {
    return a.primes_ == b.primes_ && a.basis_ == b.basis_;
  }

 private:
  static std::size_t pivot_column(const Exponents& row) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    return c;
  }

  void drop_unused_primes() {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < primes_.size(); ++k)
      for (const auto& row : basis_)
        if (row[k] != 0) { keep.push_back(k); break; }
    if (keep.size() == primes_.size()) return;
    std::vector<std::uint64_t> primes;
    for (auto k : keep) primes.push_back(primes_[k]);
    for (auto& row : basis_) {
      Exponents r;
      for (auto k : keep) r.push_back(row[k]);
      row = std::move(r);
    }
    primes_ = std::move(primes);
  }

  std::vector<std::uint64_t> primes_;
  std::vector<Exponents> basis_;
};

}  // namespace freecore
