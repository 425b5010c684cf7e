#include "pkc/simplify.hpp"

#include <algorithm>
#include <numeric>

#include "propagator.hpp"

namespace pkc {

std::optional<Propagation> unit_propagate(const Cnf& formula) {
  detail::Propagator prop(formula);
  if (!prop.start()) return std::nullopt;
  std::vector<Literal> implied = prop.trail();
  auto residual = condition(formula, implied);
  if (!residual) return std::nullopt;
  return Propagation{std::move(*residual), std::move(implied)};
}

std::optional<std::vector<Literal>> implied_literals_ibcp(const Cnf& formula) {
  detail::Propagator prop(formula);
  if (!prop.start()) return std::nullopt;
  bool progress = true;
  while (progress) {
    progress = false;
    for (Var x : formula.vars()) {
      if (prop.value(x) >= 0) continue;
      std::size_t mark = prop.mark();
      bool neg_fails = !prop.assume(Literal(x, false));
      prop.backtrack(mark);
      bool pos_fails = !prop.assume(Literal(x, true));
      prop.backtrack(mark);
      if (neg_fails && pos_fails) return std::nullopt;
      if (neg_fails || pos_fails) {
        if (!prop.assume(Literal(x, neg_fails))) return std::nullopt;
        progress = true;
      }
    }
  }
  std::vector<Literal> implied = prop.trail();
  std::sort(implied.begin(), implied.end());
  return implied;
}

namespace {

struct UnionFind {
  std::vector<Var> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Var{0}); }
  Var find(Var v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(Var a, Var b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;  // root is the smallest variable of the set
  }
};

}  // namespace

std::vector<Cnf> primal_components(const Cnf& formula) {
  if (formula.is_true()) return {};
  UnionFind uf(formula.num_vars() + 1);
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    auto c = formula.clause(i);
    for (std::size_t k = 1; k < c.size(); ++k) uf.unite(c[0].var(), c[k].var());
  }
  std::vector<Var> roots;
  std::vector<std::int32_t> slot(formula.num_vars() + 1, -1);
  for (Var v : formula.vars()) {
    Var r = uf.find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::int32_t>(roots.size());
      roots.push_back(r);
    }
  }
  std::vector<std::vector<Literal>> lits(roots.size());
  std::vector<std::vector<std::uint32_t>> offsets(roots.size(), std::vector<std::uint32_t>{0});
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    auto c = formula.clause(i);
    if (c.empty()) continue;
    auto s = static_cast<std::size_t>(slot[uf.find(c[0].var())]);
    lits[s].insert(lits[s].end(), c.begin(), c.end());
    offsets[s].push_back(static_cast<std::uint32_t>(lits[s].size()));
  }
  // roots were discovered in ascending variable order, and each root is the
  // smallest variable of its set, so components are already ordered.
  std::vector<Cnf> out;
  out.reserve(roots.size());
  for (std::size_t s = 0; s < roots.size(); ++s)
    out.push_back(Cnf(Cnf::Normalized{}, formula.num_vars(), std::move(lits[s]), std::move(offsets[s])).canonical());
  return out;
}

std::optional<std::vector<Cnf>> decompose_components(const Cnf& formula) {
  auto prop = unit_propagate(formula);
  if (!prop) return std::nullopt;
  auto probed = implied_literals_ibcp(prop->residual);
  if (!probed) return std::nullopt;
  auto residual = condition(prop->residual, *probed);
  if (!residual) return std::nullopt;

  std::vector<Literal> implied = prop->implied;
  implied.insert(implied.end(), probed->begin(), probed->end());

  std::vector<Cnf> out;
  for (Literal l : implied) out.push_back(Cnf(formula.num_vars(), {{l}}));
  for (auto& comp : primal_components(*residual)) out.push_back(std::move(comp));
  std::stable_sort(out.begin(), out.end(), [](const Cnf& a, const Cnf& b) { return a.vars().front() < b.vars().front(); });
  return out;
}

}  // namespace pkc
