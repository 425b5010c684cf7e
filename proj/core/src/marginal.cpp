#include "pkc/marginal.hpp"

#include <algorithm>

#include "pkc/dag_ops.hpp"
#include "pkc/rng.hpp"
#include "pkc/simplify.hpp"

namespace pkc {

namespace {

class ObddlBuilder {
 public:
  ObddlBuilder(std::uint32_t universe, std::uint32_t budget) : dag_(universe), budget_(budget) {}

  Dag finish(NodeId root) {
    dag_.set_root(root);
    return std::move(dag_);
  }

  NodeId build(const Cnf& formula, const std::vector<Var>& order) {
    if (++calls_ > budget_) return dag_.add_unknown();

    auto prop = unit_propagate(formula);
    if (!prop) return dag_.false_leaf();
    auto probed = implied_literals_ibcp(prop->residual);
    if (!probed) return dag_.false_leaf();

    std::vector<Literal> implied;
    auto in_order = [&](Var v) { return std::find(order.begin(), order.end(), v) != order.end(); };
    for (Literal l : prop->implied)
      if (in_order(l.var())) implied.push_back(l);
    for (Literal l : *probed)
      if (in_order(l.var())) implied.push_back(l);
    std::sort(implied.begin(), implied.end());

    auto simplified = condition(formula, implied);
    if (!simplified) return dag_.false_leaf();

    NodeId core;
    if (simplified->is_true()) {
      core = dag_.true_leaf();
    } else {
      const auto& vars = simplified->vars();
      auto pick = std::find_if(order.begin(), order.end(),
                               [&](Var v) { return std::binary_search(vars.begin(), vars.end(), v); });
      if (pick == order.end()) {
        core = dag_.add_unknown();
      } else {
        Var x = *pick;
        std::vector<Var> rest;
        for (Var v : order)
          if (v != x) rest.push_back(v);
        NodeId kids[2];
        for (bool b : {false, true}) {
          Literal l(x, b);
          auto sub = condition(*simplified, std::span<const Literal>(&l, 1));
          kids[b] = sub ? build(*sub, rest) : dag_.false_leaf();
        }
        if (dag_.holds<FalseLeaf>(kids[0]) && dag_.holds<FalseLeaf>(kids[1])) return dag_.false_leaf();
        Decision d;
        d.var = x;
        d.lo = kids[0];
        d.hi = kids[1];
        if (dag_.holds<FalseLeaf>(d.lo)) d.p0 = 0.0, d.p1 = 1.0;
        if (dag_.holds<FalseLeaf>(d.hi)) d.p0 = 1.0, d.p1 = 0.0;
        for (bool b : {false, true})
          d.f(b) = dag_.holds<FalseLeaf>(d.child(b)) || dag_.holds<UnknownLeaf>(d.child(b)) ? 0 : 1;
        core = dag_.add_decision(d);
      }
    }
    if (implied.empty()) return core;
    std::vector<NodeId> kids;
    for (Literal l : implied) kids.push_back(dag_.add_literal(l));
    kids.push_back(core);
    return dag_.add_decomposition(std::move(kids));
  }

 private:
  Dag dag_;
  std::uint32_t budget_;
  std::uint32_t calls_ = 0;
};

}  // namespace

Dag partial_obddl(const Cnf& formula, const std::vector<Var>& order, std::uint32_t node_budget) {
  ObddlBuilder builder(formula.num_vars(), node_budget);
  NodeId root = builder.build(formula, order);
  return builder.finish(root);
}

std::vector<Var> select_probe_vars(const Cnf& formula, Var x, std::uint32_t width) {
  std::vector<Var> chosen{x};
  if (width <= 1) return chosen;
  std::vector<std::vector<std::uint32_t>> occurs(formula.num_vars() + 1);
  for (std::size_t i = 0; i < formula.num_clauses(); ++i)
    for (Literal l : formula.clause(i)) occurs[l.var()].push_back(static_cast<std::uint32_t>(i));
  std::vector<std::uint32_t> score(formula.num_vars() + 1, 0);
  std::vector<bool> clause_touched(formula.num_clauses(), false);
  std::vector<bool> taken(formula.num_vars() + 1, false);
  auto take = [&](Var v) {
    taken[v] = true;
    for (std::uint32_t c : occurs[v]) {
      if (clause_touched[c]) continue;
      clause_touched[c] = true;
      for (Literal l : formula.clause(c)) ++score[l.var()];
    }
  };
  if (x <= formula.num_vars()) take(x);
  while (chosen.size() < width) {
    std::optional<Var> best;
    for (Var v : formula.vars()) {
      if (taken[v]) continue;
      if (!best || score[v] > score[*best]) best = v;
    }
    if (!best) break;
    chosen.push_back(*best);
    take(*best);
  }
  return chosen;
}

double marginal_from_dag(const Dag& dag, Var x) {
  const std::uint32_t universe = dag.universe();
  std::vector<ExtReal> total(dag.size());
  std::vector<ExtReal> with_x(dag.size());
  std::vector<bool> mentions(dag.size(), false);
  for (NodeId id : topological_order(dag, dag.root())) {
    const Node& n = dag.node(id);
    auto i = id.value;
    if (std::holds_alternative<FalseLeaf>(n)) {
      continue;
    } else if (std::holds_alternative<TrueLeaf>(n) || std::holds_alternative<UnknownLeaf>(n)) {
      total[i] = ExtReal::pow2(universe);
      with_x[i] = total[i].scaled(0.5);
    } else if (const auto* k = std::get_if<KnownLeaf>(&n)) {
      total[i] = k->model_count * ExtReal::pow2(static_cast<std::int64_t>(universe) - k->var_count);
      with_x[i] = total[i].scaled(0.5);
    } else if (const auto* d = std::get_if<Decision>(&n)) {
      total[i] = (total[d->lo.value] + total[d->hi.value]).scaled(0.5);
      if (d->var == x) {
        with_x[i] = total[d->hi.value].scaled(0.5);
        mentions[i] = true;
      } else {
        with_x[i] = (with_x[d->lo.value] + with_x[d->hi.value]).scaled(0.5);
        mentions[i] = mentions[d->lo.value] || mentions[d->hi.value];
      }
    } else if (const auto* a = std::get_if<Decomposition>(&n)) {
      ExtReal scale = ExtReal::pow2((1 - static_cast<std::int64_t>(a->children.size())) * universe);
      std::size_t pivot = 0;
      for (std::size_t c = 0; c < a->children.size(); ++c)
        if (mentions[a->children[c].value]) pivot = c, mentions[i] = true;
      total[i] = scale;
      with_x[i] = scale;
      for (std::size_t c = 0; c < a->children.size(); ++c) {
        auto ch = a->children[c].value;
        total[i] *= total[ch];
        with_x[i] *= c == pivot ? with_x[ch] : total[ch];
      }
    }
  }
  const auto r = dag.root().value;
  if (total[r].is_zero()) return 0.5;
  return (with_x[r] / total[r]).to_double();
}

double probe_marginal(const Cnf& formula, Var x, const std::vector<Var>& order, std::uint32_t node_budget) {
  return marginal_from_dag(partial_obddl(formula, order, node_budget), x);
}

double estimate_marginal(const Cnf& formula, Var x, const ProbeConfig& config) {
  double raw = probe_marginal(formula, x, select_probe_vars(formula, x, config.probe_width), config.node_budget);
  double eps = 1.0 / (2.0 * static_cast<double>(formula.vars().size()) + 2.0);
  return std::clamp(raw, eps, 1.0 - eps);
}

double ScriptedMarginalEstimator::estimate(const Cnf&, Var) {
  if (next_ >= values_.size()) throw ScriptExhausted("scripted marginal sequence exhausted");
  return values_[next_++];
}

}  // namespace pkc
