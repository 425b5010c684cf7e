#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "pkc/cnf.hpp"
#include "pkc/ext_real.hpp"

namespace pkc {

struct NodeId {
  std::uint32_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};

struct FalseLeaf {};
struct TrueLeaf {};
/// Root of a sub-formula that has not been compiled yet.
struct UnknownLeaf {};
/// Exact model count of a small sub-formula over its own `var_count`
/// variables; carries no formula.
struct KnownLeaf {
  ExtReal model_count;
  std::uint32_t var_count = 0;
};
/// Decision on `var`: low child for var=0, high child for var=1. Each arc
/// carries an estimated marginal probability p_b and a visit frequency f_b.
struct Decision {
  Var var = 0;
  NodeId lo;
  NodeId hi;
  double p0 = 0.5;
  double p1 = 0.5;
  std::uint64_t f0 = 0;
  std::uint64_t f1 = 0;

  NodeId child(bool b) const { return b ? hi : lo; }
  NodeId& child(bool b) { return b ? hi : lo; }
  double p(bool b) const { return b ? p1 : p0; }
  std::uint64_t f(bool b) const { return b ? f1 : f0; }
  std::uint64_t& f(bool b) { return b ? f1 : f0; }
};
/// Conjunction of variable-disjoint children.
struct Decomposition {
  std::vector<NodeId> children;
};

using Node = std::variant<FalseLeaf, TrueLeaf, UnknownLeaf, KnownLeaf, Decision, Decomposition>;

/// Arena-backed rooted DAG over a universe of `universe` variables. The
/// false and true leaves are shared singletons; unknown leaves are not.
/// Nodes not reachable from the root are ignored by every operation.
class Dag {
 public:
  explicit Dag(std::uint32_t universe) : universe_(universe) {}

  std::uint32_t universe() const { return universe_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(NodeId id) const { return id.value < nodes_.size(); }

  NodeId root() const { return root_; }
  void set_root(NodeId id) { root_ = id; }

  const Node& node(NodeId id) const { return nodes_.at(id.value); }
  Node& node(NodeId id) { return nodes_.at(id.value); }

  template <class T>
  bool holds(NodeId id) const {
    return std::holds_alternative<T>(node(id));
  }
  const Decision& decision(NodeId id) const { return std::get<Decision>(node(id)); }
  Decision& decision(NodeId id) { return std::get<Decision>(node(id)); }

  NodeId false_leaf();
  NodeId true_leaf();
  NodeId add_unknown() { return add(UnknownLeaf{}); }
  NodeId add_known(ExtReal model_count, std::uint32_t var_count) { return add(KnownLeaf{model_count, var_count}); }
  NodeId add_decision(const Decision& d) { return add(d); }
  /// ⟨x⟩ = ⟨x, ⊥, ⊤⟩ with p = (0, 1) and f = (0, 1); ⟨¬x⟩ mirrors it.
  NodeId add_literal(Literal lit);
  NodeId add_decomposition(std::vector<NodeId> children) { return add(Decomposition{std::move(children)}); }
  /// Raw insertion; leaves are not deduplicated.
  NodeId add(Node node);

  /// The literal of a literal vertex (a decision over ⊥/⊤ with canonical
  /// p and f), else nullopt.
  std::optional<Literal> literal_of(NodeId id) const;

 private:
  std::uint32_t universe_;
  std::vector<Node> nodes_;
  NodeId root_;
  std::optional<NodeId> false_;
  std::optional<NodeId> true_;
};

/// Children of a node in arc order (lo, hi for decisions).
std::vector<NodeId> children_of(const Node& node);

}  // namespace pkc

template <>
struct std::hash<pkc::NodeId> {
  std::size_t operator()(pkc::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
