#pragma once

/**
 * Symbolic terms for (possibly semifinite) algebras.
 *
 * Expr is an immutable handle onto a shared term tree. Leaves are concrete
 * algebras (matrix algebras, hyperfinite algebras, interpolated free group
 * factors) or opaque labels; interior nodes are direct sums, free products,
 * amalgamated free products over l^inf(Gamma), amplifications, compressed
 * pieces, and Gamma-indexed families.
 *
 * key() is an unambiguous serialization; two terms are equal iff their keys
 * are. to_string() is the human-readable form used in reports.
 */

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "freecore/mult_group.hpp"
#include "freecore/rational.hpp"

namespace freecore {

struct Leaf {
  enum class Kind { Matrix, Hyperfinite, FreeGroup, Abstract, Label };
  Kind kind = Kind::Matrix;
  std::size_t n = 1;       // Matrix: M_n(C), n = 1 is the scalars
  bool finite = true;      // Hyperfinite: false for the semifinite infinite one
  Extended param;          // FreeGroup
  std::string label;       // Abstract / Label
};

class Expr;
struct ExprNode;

class Expr {
 public:
  Expr();  // the scalars C
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  const ExprNode& node() const { return *node_; }

  template <class T>
  bool is() const;
  template <class T>
  const T& as() const;

  std::string key() const;
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b) { return a.key() == b.key(); }

 private:
  std::shared_ptr<const ExprNode> node_;
};

struct DirectSumNode {
  std::vector<std::pair<Rational, Expr>> parts;  // (trace weight, summand)
};

struct FreeProductNode {
  std::vector<Expr> factors;
};

struct AmalgamatedNode {
  MultGroup base;  // amalgam l^inf(Gamma) with Tr(e_gamma) = gamma^-1
  std::vector<Expr> factors;
};

struct AmplifyNode {
  Extended t;  // infinity: tensor with B(l^2)
  Expr inner;
};

struct CompressedNode {
  Rational trace;
  Expr inner;
};

struct IndexedNode {
  enum class Op { FreeProduct, DirectSum };
  Op op = Op::FreeProduct;
  MultGroup group;
  Expr body;
  bool amplify_by_gamma = true;  // member gamma is body^gamma
};

struct ExprNode {
  std::variant<Leaf, DirectSumNode, FreeProductNode, AmalgamatedNode, AmplifyNode, CompressedNode, IndexedNode> v;
};

template <class T>
bool Expr::is() const { return std::holds_alternative<T>(node_->v); }
template <class T>
const T& Expr::as() const { return std::get<T>(node_->v); }

namespace expr {

inline Expr make(ExprNode n) { return Expr(std::make_shared<const ExprNode>(std::move(n))); }

inline Expr matrix(std::size_t n) { Leaf l; l.kind = Leaf::Kind::Matrix; l.n = n; return make({l}); }
inline Expr scalars() { return matrix(1); }
inline Expr hyperfinite(bool finite = true) { Leaf l; l.kind = Leaf::Kind::Hyperfinite; l.finite = finite; return make({l}); }
inline Expr free_group(const Extended& r) { Leaf l; l.kind = Leaf::Kind::FreeGroup; l.param = r; return make({l}); }
inline Expr abstract(std::string label) { Leaf l; l.kind = Leaf::Kind::Abstract; l.label = std::move(label); return make({l}); }
inline Expr label(std::string text) { Leaf l; l.kind = Leaf::Kind::Label; l.label = std::move(text); return make({l}); }

inline Expr direct_sum(std::vector<std::pair<Rational, Expr>> parts) { return make({DirectSumNode{std::move(parts)}}); }
inline Expr free_product(std::vector<Expr> factors) { return make({FreeProductNode{std::move(factors)}}); }
inline Expr amalgamated(MultGroup base, std::vector<Expr> factors) {
  return make({AmalgamatedNode{std::move(base), std::move(factors)}});
}
inline Expr amplify(const Extended& t, Expr inner) { return make({AmplifyNode{t, std::move(inner)}}); }
inline Expr compressed(const Rational& c, Expr inner) { return make({CompressedNode{c, std::move(inner)}}); }
inline Expr indexed(IndexedNode::Op op, MultGroup group, Expr body, bool amplify_by_gamma) {
  return make({IndexedNode{op, std::move(group), std::move(body), amplify_by_gamma}});
}

inline std::string group_key(const MultGroup& g) {
  std::string s = "{";
  auto gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + gens[i].to_string();
  return s + "}";
}

}  // namespace expr

inline Expr::Expr() : Expr(expr::scalars()) {}

inline std::string Expr::key() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          switch (n.kind) {
            case Leaf::Kind::Matrix: return "M(" + std::to_string(n.n) + ")";
            case Leaf::Kind::Hyperfinite: return n.finite ? "R(1)" : "R(0)";
            case Leaf::Kind::FreeGroup: return "F(" + n.param.to_string() + ")";
            case Leaf::Kind::Abstract: return "A(" + n.label + ")";
            case Leaf::Kind::Label: return "T(" + n.label + ")";
          }
          return "?";
        } else if constexpr (std::is_same_v<T, DirectSumNode>) {
          std::string s = "DS[";
          for (std::size_t i = 0; i < n.parts.size(); ++i)
            s += (i ? "," : "") + n.parts[i].first.to_string() + ":" + n.parts[i].second.key();
          return s + "]";
        } else if constexpr (std::is_same_v<T, FreeProductNode>) {
          std::string s = "FP[";
          for (std::size_t i = 0; i < n.factors.size(); ++i) s += (i ? "," : "") + n.factors[i].key();
          return s + "]";
        } else if constexpr (std::is_same_v<T, AmalgamatedNode>) {
          std::string s = "AFP" + expr::group_key(n.base) + "[";
          for (std::size_t i = 0; i < n.factors.size(); ++i) s += (i ? "," : "") + n.factors[i].key();
          return s + "]";
        } else if constexpr (std::is_same_v<T, AmplifyNode>) {
          return "AMP(" + n.t.to_string() + ";" + n.inner.key() + ")";
        } else if constexpr (std::is_same_v<T, CompressedNode>) {
          return "CP(" + n.trace.to_string() + ";" + n.inner.key() + ")";
        } else {
          return std::string("IX(") + (n.op == IndexedNode::Op::FreeProduct ? "FP" : "DS") + "," +
                 expr::group_key(n.group) + "," + (n.amplify_by_gamma ? "1" : "0") + ";" + n.body.key() + ")";
        }
      },
      node_->v);
}

namespace expr {

inline bool is_atomic_print(const Expr& e) {
  return e.is<Leaf>() || e.is<CompressedNode>() || e.is<IndexedNode>();
}

inline std::string wrap(const Expr& e) {
  return is_atomic_print(e) ? e.to_string() : "(" + e.to_string() + ")";
}

}  // namespace expr

inline std::string Expr::to_string() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          switch (n.kind) {
            case Leaf::Kind::Matrix: return n.n == 1 ? "ℂ" : "M_" + std::to_string(n.n) + "(ℂ)";
            case Leaf::Kind::Hyperfinite: return n.finite ? "R" : "R_{0,1}";
            case Leaf::Kind::FreeGroup: return "L(F_" + n.param.display() + ")";
            case Leaf::Kind::Abstract:
            case Leaf::Kind::Label: return n.label;
          }
          return "?";
        } else if constexpr (std::is_same_v<T, DirectSumNode>) {
          std::string s;
          for (std::size_t i = 0; i < n.parts.size(); ++i)
            s += (i ? " ⊕ " : "") + expr::wrap(n.parts[i].second) + "_{" + n.parts[i].first.to_string() + "}";
          return s.empty() ? "0" : s;
        } else if constexpr (std::is_same_v<T, FreeProductNode>) {
          std::string s;
          for (std::size_t i = 0; i < n.factors.size(); ++i) s += (i ? " ⋆ " : "") + expr::wrap(n.factors[i]);
          return s.empty() ? "ℂ" : s;
        } else if constexpr (std::is_same_v<T, AmalgamatedNode>) {
          std::string s;
          for (std::size_t i = 0; i < n.factors.size(); ++i) s += (i ? " ⋆_{ℓ^∞(Γ)} " : "") + expr::wrap(n.factors[i]);
          return s;
        } else if constexpr (std::is_same_v<T, AmplifyNode>) {
          if (n.t.is_infinite()) return expr::wrap(n.inner) + " ⊗̄ B(ℓ²)";
          return expr::wrap(n.inner) + "^{" + n.t.display() + "}";
        } else if constexpr (std::is_same_v<T, CompressedNode>) {
          return "[" + n.trace.to_string() + ", " + n.inner.to_string() + "]";
        } else {
          if (n.op == IndexedNode::Op::FreeProduct)
            return "⋆_{γ∈Γ}(" + n.body.to_string() + ")" + (n.amplify_by_gamma ? "^γ" : "");
          return "⊕_{γ∈Γ}(" + n.body.to_string() + ")" + (n.amplify_by_gamma ? "^γ" : "");
        }
      },
      node_->v);
}

}  // namespace freecore
