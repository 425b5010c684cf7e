#include "pkc/dag.hpp"

#include <stdexcept>

namespace pkc {

NodeId Dag::add(Node node) {
  if (nodes_.size() >= 0xffffffffu) throw std::length_error("Dag: node arena full");
  nodes_.push_back(std::move(node));
  return NodeId{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

NodeId Dag::false_leaf() {
  if (!false_) false_ = add(FalseLeaf{});
  return *false_;
}

NodeId Dag::true_leaf() {
  if (!true_) true_ = add(TrueLeaf{});
  return *true_;
}

NodeId Dag::add_literal(Literal lit) {
  Decision d;
  d.var = lit.var();
  NodeId bot = false_leaf();
  NodeId top = true_leaf();
  if (lit.positive()) {
    d.lo = bot, d.hi = top, d.p0 = 0.0, d.p1 = 1.0, d.f0 = 0, d.f1 = 1;
  } else {
    d.lo = top, d.hi = bot, d.p0 = 1.0, d.p1 = 0.0, d.f0 = 1, d.f1 = 0;
  }
  return add(d);
}

std::optional<Literal> Dag::literal_of(NodeId id) const {
  const auto* d = std::get_if<Decision>(&node(id));
  if (!d) return std::nullopt;
  bool lo_false = holds<FalseLeaf>(d->lo), lo_true = holds<TrueLeaf>(d->lo);
  bool hi_false = holds<FalseLeaf>(d->hi), hi_true = holds<TrueLeaf>(d->hi);
  if (lo_false && hi_true && d->p0 == 0.0 && d->p1 == 1.0 && d->f0 == 0 && d->f1 == 1) return Literal(d->var, true);
  if (lo_true && hi_false && d->p0 == 1.0 && d->p1 == 0.0 && d->f0 == 1 && d->f1 == 0) return Literal(d->var, false);
  return std::nullopt;
}

std::vector<NodeId> children_of(const Node& node) {
  if (const auto* d = std::get_if<Decision>(&node)) return {d->lo, d->hi};
  if (const auto* a = std::get_if<Decomposition>(&node)) return a->children;
  return {};
}

}  // namespace pkc
