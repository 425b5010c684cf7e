#include "pkc/random_part.hpp"

#include <stdexcept>
#include <unordered_map>

#include "pkc/dag_ops.hpp"

namespace pkc {

Dag random_part(const Dag& full, std::uint64_t samples, const MarginalFn& marginal, BranchSampler& sampler) {
  if (samples == 0) throw std::invalid_argument("random_part: N must be positive");
  if (full.holds<FalseLeaf>(full.root())) throw std::invalid_argument("random_part: unsatisfiable root");
  if (has_unknown(full, full.root())) throw std::invalid_argument("random_part: input is not a full Decision-DNNF");

  // Copy the reachable part, children first, so ids map cleanly.
  Dag part(full.universe());
  std::unordered_map<NodeId, NodeId> copy_of;
  std::vector<NodeId> literals;
  for (NodeId id : topological_order(full, full.root())) {
    const Node& n = full.node(id);
    NodeId copy;
    if (std::holds_alternative<FalseLeaf>(n)) {
      copy = part.false_leaf();
    } else if (std::holds_alternative<TrueLeaf>(n)) {
      copy = part.true_leaf();
    } else if (auto lit = full.literal_of(id)) {
      copy = part.add_literal(*lit);
      literals.push_back(copy);
    } else if (const auto* d = std::get_if<Decision>(&n)) {
      Decision c;
      c.var = d->var;
      c.lo = copy_of.at(d->lo);
      c.hi = copy_of.at(d->hi);
      if (full.holds<FalseLeaf>(d->lo)) {
        c.p0 = 0.0;
      } else if (full.holds<FalseLeaf>(d->hi)) {
        c.p0 = 1.0;
      } else {
        double p1 = marginal(full, id);
        if (!(p1 > 0.0 && p1 < 1.0)) throw std::invalid_argument("random_part: marginal must lie in (0, 1)");
        c.p0 = 1.0 - p1;
      }
      c.p1 = 1.0 - c.p0;
      c.f0 = c.f1 = 0;
      copy = part.add_decision(c);
    } else if (const auto* a = std::get_if<Decomposition>(&n)) {
      std::vector<NodeId> kids;
      for (NodeId ch : a->children) kids.push_back(copy_of.at(ch));
      copy = part.add_decomposition(std::move(kids));
    } else {
      copy = part.add(n);  // known leaf
    }
    copy_of.emplace(id, copy);
  }
  part.set_root(copy_of.at(full.root()));

  std::vector<bool> is_literal(part.size(), false);
  for (NodeId l : literals) is_literal[l.value] = true;

  for (std::uint64_t i = 0; i < samples; ++i) {
    Sample s = sample_dnnf(part, part.root(), sampler);
    for (auto [id, b] : s.visited)
      if (!is_literal[id.value]) ++part.decision(id).f(b);
  }

  const std::size_t size = part.size();
  for (std::uint32_t i = 0; i < size; ++i) {
    NodeId id{i};
    if (is_literal[i] || !part.holds<Decision>(id)) continue;
    for (bool b : {false, true}) {
      Decision& d = part.decision(id);
      if (d.f(b) == 0 && d.p(b) > 0.0) {
        NodeId unknown = part.add_unknown();
        part.decision(id).child(b) = unknown;
      }
    }
  }
  return part;
}

}  // namespace pkc
