#include "pkc/dag_ops.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace pkc {

namespace {

std::string where(NodeId id) { return "node " + std::to_string(id.value) + ": "; }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ExtReal conjunction_scale(std::size_t arity, std::uint32_t universe) {
  return ExtReal::pow2((1 - static_cast<std::int64_t>(arity)) * static_cast<std::int64_t>(universe));
}

ExtReal known_value(const KnownLeaf& k, std::uint32_t universe) {
  return k.model_count * ExtReal::pow2(static_cast<std::int64_t>(universe) - k.var_count);
}

}  // namespace

std::vector<NodeId> topological_order(const Dag& dag, NodeId at) {
  if (!dag.contains(at)) throw std::logic_error(where(at) + "id out of range");
  enum : std::uint8_t { kNew, kOpen, kDone };
  std::vector<std::uint8_t> state(dag.size(), kNew);
  std::vector<NodeId> order;
  std::vector<std::pair<NodeId, std::size_t>> stack{{at, 0}};
  state[at.value] = kOpen;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const Node& n = dag.node(id);
    std::optional<NodeId> child;
    if (const auto* d = std::get_if<Decision>(&n)) {
      if (next < 2) child = next == 0 ? d->lo : d->hi;
    } else if (const auto* a = std::get_if<Decomposition>(&n)) {
      if (next < a->children.size()) child = a->children[next];
    }
    if (!child) {
      state[id.value] = kDone;
      order.push_back(id);
      stack.pop_back();
      continue;
    }
    ++next;
    if (!dag.contains(*child))
      throw std::logic_error(where(id) + "child id " + std::to_string(child->value) + " out of range");
    if (state[child->value] == kOpen) throw std::logic_error(where(id) + "cycle through node " + std::to_string(child->value));
    if (state[child->value] == kNew) {
      state[child->value] = kOpen;
      stack.emplace_back(*child, 0);
    }
  }
  return order;
}

std::vector<std::string> validate(const Dag& dag) {
  std::vector<std::string> issues;
  if (!dag.contains(dag.root())) {
    issues.push_back("root id " + std::to_string(dag.root().value) + " out of range");
    return issues;
  }
  std::vector<NodeId> order;
  try {
    order = topological_order(dag, dag.root());
  } catch (const std::logic_error& e) {
    issues.emplace_back(e.what());
    return issues;
  }

  const std::uint32_t universe = dag.universe();
  std::vector<std::vector<Var>> scope(dag.size());
  for (NodeId id : order) {
    std::visit(
        Overloaded{
            [&](const FalseLeaf&) {}, [&](const TrueLeaf&) {}, [&](const UnknownLeaf&) {},
            [&](const KnownLeaf& k) {
              if (k.var_count > universe) issues.push_back(where(id) + "known leaf var_count exceeds universe");
              if (k.model_count > ExtReal::pow2(k.var_count))
                issues.push_back(where(id) + "known leaf count exceeds 2^var_count");
            },
            [&](const Decision& d) {
              if (d.var < 1 || d.var > universe)
                issues.push_back(where(id) + "decision variable " + std::to_string(d.var) + " outside universe");
              if (!(d.p0 >= 0.0 && d.p0 <= 1.0 && d.p1 >= 0.0 && d.p1 <= 1.0) || std::abs(d.p0 + d.p1 - 1.0) > 1e-9)
                issues.push_back(where(id) + "p0 + p1 != 1");
              for (bool b : {false, true}) {
                NodeId ch = d.child(b);
                bool is_false = dag.holds<FalseLeaf>(ch);
                bool is_unknown = dag.holds<UnknownLeaf>(ch);
                if ((d.p(b) == 0.0) != is_false)
                  issues.push_back(where(id) + "p_b=0 iff ⊥ child violated on arc " + std::to_string(b));
                if (d.p(b) == 0.0) {
                  if (d.f(b) != 0) issues.push_back(where(id) + "arc " + std::to_string(b) + " has p_b=0 but f_b>0");
                } else if ((d.f(b) == 0) != is_unknown) {
                  issues.push_back(where(id) + "f_b=0 iff ? child violated on arc " + std::to_string(b));
                }
              }
              auto& s = scope[id.value];
              std::set_union(scope[d.lo.value].begin(), scope[d.lo.value].end(), scope[d.hi.value].begin(),
                             scope[d.hi.value].end(), std::back_inserter(s));
              if (std::binary_search(s.begin(), s.end(), d.var))
                issues.push_back(where(id) + "decision variable " + std::to_string(d.var) + " occurs below it");
              s.insert(std::lower_bound(s.begin(), s.end(), d.var), d.var);
              s.erase(std::unique(s.begin(), s.end()), s.end());
            },
            [&](const Decomposition& a) {
              if (a.children.empty()) issues.push_back(where(id) + "decomposition without children");
              std::vector<Var> merged;
              for (NodeId ch : a.children) {
                if (dag.holds<Decomposition>(ch))
                  issues.push_back(where(id) + "decomposition child " + std::to_string(ch.value) + " is a decomposition");
                const auto& cs = scope[ch.value];
                std::vector<Var> shared;
                std::set_intersection(merged.begin(), merged.end(), cs.begin(), cs.end(), std::back_inserter(shared));
                for (Var v : shared)
                  issues.push_back(where(id) + "decomposability violated: children share variable " + std::to_string(v));
                std::vector<Var> next;
                std::set_union(merged.begin(), merged.end(), cs.begin(), cs.end(), std::back_inserter(next));
                merged = std::move(next);
              }
              scope[id.value] = std::move(merged);
            }},
        dag.node(id));
  }
  return issues;
}

namespace {

// Bottom-up fold where unknown leaves get values from `unknown`.
template <class UnknownFn>
ExtReal fold_counts(const Dag& dag, NodeId at, UnknownFn&& unknown) {
  const std::uint32_t universe = dag.universe();
  std::vector<ExtReal> value(dag.size());
  for (NodeId id : topological_order(dag, at)) {
    value[id.value] = std::visit(
        Overloaded{[&](const FalseLeaf&) { return ExtReal{}; },
                   [&](const TrueLeaf&) { return ExtReal::pow2(universe); },
                   [&](const UnknownLeaf&) { return unknown(id); },
                   [&](const KnownLeaf& k) { return known_value(k, universe); },
                   [&](const Decision& d) { return (value[d.lo.value] + value[d.hi.value]).scaled(0.5); },
                   [&](const Decomposition& a) {
                     ExtReal prod = conjunction_scale(a.children.size(), universe);
                     for (NodeId ch : a.children) prod *= value[ch.value];
                     return prod;
                   }},
        dag.node(id));
  }
  return value[at.value];
}

}  // namespace

ExtReal count_models(const Dag& dag, NodeId at) {
  return fold_counts(dag, at, [](NodeId id) -> ExtReal {
    throw std::logic_error(where(id) + "count_models reached an unknown leaf");
  });
}

ExtReal bound(const Dag& dag, NodeId at, BoundMode mode, const std::unordered_map<NodeId, ExtReal>& unknown_values) {
  ExtReal fallback = mode == BoundMode::kLower ? ExtReal{} : ExtReal::pow2(dag.universe());
  return fold_counts(dag, at, [&](NodeId id) {
    auto it = unknown_values.find(id);
    return it == unknown_values.end() ? fallback : it->second;
  });
}

namespace {

class EventProbability {
 public:
  EventProbability(const Dag& dag, const PartialAssignment& w) : dag_(dag), w_(w), memo_(dag.size()) {}

  ExtReal at(NodeId id) {
    if (memo_[id.value]) return *memo_[id.value];
    const std::int64_t size = static_cast<std::int64_t>(w_.size());
    ExtReal result = std::visit(
        Overloaded{[&](const FalseLeaf&) { return ExtReal{}; },
                   [&](const TrueLeaf&) { return ExtReal::pow2(-size); },
                   [&](const UnknownLeaf&) -> ExtReal {
                     throw std::logic_error(where(id) + "assignment_probability reached an unknown leaf");
                   },
                   [&](const KnownLeaf&) -> ExtReal {
                     throw std::logic_error(where(id) + "assignment_probability reached a known leaf");
                   },
                   [&](const Decision& d) {
                     if (auto b = w_.value(d.var)) {
                       if (d.p(*b) == 0.0) return ExtReal{};
                       return at(d.child(*b)).scaled(2.0 * d.p(*b));
                     }
                     ExtReal sum;
                     for (bool b : {false, true})
                       if (d.p(b) > 0.0) sum += at(d.child(b)).scaled(d.p(b));
                     return sum;
                   },
                   [&](const Decomposition& a) {
                     ExtReal prod = ExtReal::pow2((static_cast<std::int64_t>(a.children.size()) - 1) * size);
                     for (NodeId ch : a.children) prod *= at(ch);
                     return prod;
                   }},
        dag_.node(id));
    memo_[id.value] = result;
    return result;
  }

 private:
  const Dag& dag_;
  const PartialAssignment& w_;
  std::vector<std::optional<ExtReal>> memo_;
};

}  // namespace

ExtReal assignment_probability(const Dag& dag, NodeId at, const PartialAssignment& assignment) {
  topological_order(dag, at);  // rejects cycles before recursing
  EventProbability prob(dag, assignment);
  return prob.at(at);
}

Sample sample_dnnf(const Dag& dag, NodeId at, BranchSampler& sampler) {
  Sample out;
  std::vector<NodeId> stack{at};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    std::visit(Overloaded{[&](const TrueLeaf&) {},
                          [&](const FalseLeaf&) { throw std::logic_error(where(id) + "sampling reached ⊥"); },
                          [&](const UnknownLeaf&) { throw std::logic_error(where(id) + "sampling reached an unknown leaf"); },
                          [&](const KnownLeaf&) { throw std::logic_error(where(id) + "sampling reached a known leaf"); },
                          [&](const Decision& d) {
                            bool b = sampler.sample(d.p1);
                            if (out.assignment.contains(d.var))
                              throw std::logic_error(where(id) + "variable sampled twice (not decomposable)");
                            out.assignment.bind(d.var, b);
                            out.visited.emplace_back(id, b);
                            stack.push_back(d.child(b));
                          },
                          [&](const Decomposition& a) {
                            for (auto it = a.children.rbegin(); it != a.children.rend(); ++it) stack.push_back(*it);
                          }},
               dag.node(id));
  }
  return out;
}

ExtReal estimate_from_samples(const Dag& dag, NodeId at, std::span<const PartialAssignment> samples) {
  if (samples.empty()) throw std::invalid_argument("estimate_from_samples: no samples");
  ExtReal sum;
  for (const auto& w : samples) {
    ExtReal pr = assignment_probability(dag, at, w);
    if (pr.is_zero()) throw std::invalid_argument("estimate_from_samples: sample has zero probability");
    sum += ExtReal::pow2(static_cast<std::int64_t>(dag.universe()) - static_cast<std::int64_t>(w.size())) / pr;
  }
  return sum.scaled(1.0 / static_cast<double>(samples.size()));
}

ExtReal unbiased_estimate(const Dag& dag, NodeId at, const ExtReal& placeholder) {
  const std::uint32_t universe = dag.universe();
  // nullopt marks a node whose estimate is undefined (f0 + f1 = 0); that is
  // only an error if some positive-frequency arc leads to it.
  std::vector<std::optional<ExtReal>> value(dag.size());
  for (NodeId id : topological_order(dag, at)) {
    value[id.value] = std::visit(
        Overloaded{[&](const FalseLeaf&) -> std::optional<ExtReal> { return ExtReal{}; },
                   [&](const TrueLeaf&) -> std::optional<ExtReal> { return ExtReal::pow2(universe); },
                   [&](const UnknownLeaf&) -> std::optional<ExtReal> { return placeholder; },
                   [&](const KnownLeaf& k) -> std::optional<ExtReal> { return known_value(k, universe); },
                   [&](const Decision& d) -> std::optional<ExtReal> {
                     const std::uint64_t total = d.f0 + d.f1;
                     if (total == 0) return std::nullopt;
                     ExtReal sum;
                     for (bool b : {false, true}) {
                       if (d.f(b) == 0) continue;  // 0/0 = 0
                       if (d.p(b) <= 0.0) throw std::logic_error(where(id) + "visited arc with p_b = 0");
                       const auto& child = value[d.child(b).value];
                       if (!child)
                         throw std::logic_error(where(id) + "positive-frequency arc leads to a decision with f0+f1=0");
                       double coeff = static_cast<double>(d.f(b)) / (2.0 * d.p(b) * static_cast<double>(total));
                       sum += child->scaled(coeff);
                     }
                     return sum;
                   },
                   [&](const Decomposition& a) -> std::optional<ExtReal> {
                     ExtReal prod = conjunction_scale(a.children.size(), universe);
                     for (NodeId ch : a.children) {
                       if (!value[ch.value]) return std::nullopt;
                       prod *= *value[ch.value];
                     }
                     return prod;
                   }},
        dag.node(id));
  }
  if (!value[at.value]) throw std::logic_error(where(at) + "estimate undefined: decision with f0+f1=0");
  return *value[at.value];
}

Truth evaluate(const Dag& dag, NodeId at, const std::vector<bool>& values) {
  return std::visit(
      Overloaded{[&](const FalseLeaf&) { return Truth::kFalse; }, [&](const TrueLeaf&) { return Truth::kTrue; },
                 [&](const UnknownLeaf&) { return Truth::kUnknown; },
                 [&](const KnownLeaf&) -> Truth { throw std::logic_error(where(at) + "cannot evaluate a known leaf"); },
                 [&](const Decision& d) { return evaluate(dag, d.child(values.at(d.var)), values); },
                 [&](const Decomposition& a) {
                   bool unknown = false, all_true = true;
                   for (NodeId ch : a.children) {
                     Truth t = evaluate(dag, ch, values);
                     if (t == Truth::kUnknown) unknown = true;
                     if (t != Truth::kTrue) all_true = false;
                   }
                   if (unknown) return Truth::kUnknown;
                   return all_true ? Truth::kTrue : Truth::kFalse;
                 }},
      dag.node(at));
}

namespace {

class PartMatcher {
 public:
  PartMatcher(const Dag& partial, const Dag& full) : partial_(partial), full_(full) {}

  bool match(NodeId u, NodeId w) {
    auto key = (static_cast<std::uint64_t>(u.value) << 32) | w.value;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = compute(u, w);
    memo_[key] = result;
    return result;
  }

 private:
  bool compute(NodeId u, NodeId w) {
    const Node& pu = partial_.node(u);
    const Node& fw = full_.node(w);
    if (std::holds_alternative<UnknownLeaf>(pu)) return true;
    if (std::holds_alternative<FalseLeaf>(fw)) return std::holds_alternative<FalseLeaf>(pu);
    if (std::holds_alternative<TrueLeaf>(fw)) return std::holds_alternative<TrueLeaf>(pu);
    if (const auto* kw = std::get_if<KnownLeaf>(&fw)) {
      const auto* ku = std::get_if<KnownLeaf>(&pu);
      return ku && ku->var_count == kw->var_count && ku->model_count == kw->model_count;
    }
    if (const auto* dw = std::get_if<Decision>(&fw)) {
      const auto* du = std::get_if<Decision>(&pu);
      return du && du->var == dw->var && match(du->lo, dw->lo) && match(du->hi, dw->hi);
    }
    if (const auto* aw = std::get_if<Decomposition>(&fw)) {
      const auto* au = std::get_if<Decomposition>(&pu);
      if (!au || au->children.size() != aw->children.size()) return false;
      std::vector<bool> used(aw->children.size(), false);
      return assign(au->children, aw->children, 0, used);
    }
    return false;  // full side holds an unknown leaf
  }

  // Backtracking search for a bijection between decomposition children.
  bool assign(const std::vector<NodeId>& mine, const std::vector<NodeId>& theirs, std::size_t i, std::vector<bool>& used) {
    if (i == mine.size()) return true;
    for (std::size_t j = 0; j < theirs.size(); ++j) {
      if (used[j] || !match(mine[i], theirs[j])) continue;
      used[j] = true;
      if (assign(mine, theirs, i + 1, used)) return true;
      used[j] = false;
    }
    return false;
  }

  const Dag& partial_;
  const Dag& full_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

}  // namespace

bool is_part_of(const Dag& partial, NodeId partial_at, const Dag& full, NodeId full_at) {
  topological_order(partial, partial_at);
  topological_order(full, full_at);
  PartMatcher matcher(partial, full);
  return matcher.match(partial_at, full_at);
}

std::size_t edge_count(const Dag& dag, NodeId at) {
  std::size_t edges = 0;
  for (NodeId id : topological_order(dag, at)) edges += children_of(dag.node(id)).size();
  return edges;
}

bool has_unknown(const Dag& dag, NodeId at) {
  for (NodeId id : topological_order(dag, at))
    if (dag.holds<UnknownLeaf>(id)) return true;
  return false;
}

}  // namespace pkc
