#include "pkc/counting.hpp"

#include <string>
#include <unordered_map>

#include "pkc/simplify.hpp"
#include "propagator.hpp"

namespace pkc {

namespace {

bool dpll(detail::Propagator& prop) {
  auto branch = prop.pick_branch();
  if (!branch) return true;
  for (Literal l : {*branch, ~*branch}) {
    std::size_t mark = prop.mark();
    if (prop.assume(l) && dpll(prop)) return true;
    prop.backtrack(mark);
  }
  return false;
}

Var most_frequent_var(const Cnf& formula) {
  std::vector<std::uint32_t> occ(formula.num_vars() + 1, 0);
  for (std::size_t i = 0; i < formula.num_clauses(); ++i)
    for (Literal l : formula.clause(i)) ++occ[l.var()];
  Var best = formula.vars().front();
  for (Var v : formula.vars())
    if (occ[v] > occ[best]) best = v;
  return best;
}

class Counter {
 public:
  std::uint64_t count(const Cnf& formula) {
    auto prop = unit_propagate(formula);
    if (!prop) return 0;
    const Cnf& residual = prop->residual;
    std::size_t dropped = formula.vars().size() - prop->implied.size() - residual.vars().size();
    std::uint64_t total = std::uint64_t{1} << dropped;
    for (const Cnf& comp : primal_components(residual)) {
      std::uint64_t c = count_component(comp);
      if (c == 0) return 0;
      total *= c;
    }
    return total;
  }

 private:
  std::uint64_t count_component(const Cnf& comp) {
    ComponentKey key = component_key(comp);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Var x = most_frequent_var(comp);
    std::uint64_t total = 0;
    for (bool b : {false, true}) {
      Literal lit(x, b);
      auto sub = condition(comp, std::span<const Literal>(&lit, 1));
      if (!sub) continue;
      std::size_t dropped = comp.vars().size() - 1 - sub->vars().size();
      total += count(*sub) << dropped;
    }
    cache_.emplace(std::move(key), total);
    return total;
  }

  std::unordered_map<ComponentKey, std::uint64_t> cache_;
};

}  // namespace

bool is_satisfiable(const Cnf& formula) {
  detail::Propagator prop(formula);
  if (!prop.start()) return false;
  return dpll(prop);
}

std::uint64_t count_models_over_own_vars(const Cnf& formula, std::uint32_t limit) {
  if (limit > 62) throw std::invalid_argument("oracle limit above 62 variables");
  if (formula.vars().size() > limit)
    throw OracleLimitError("formula has " + std::to_string(formula.vars().size()) +
                           " variables, oracle limit is " + std::to_string(limit));
  if (formula.has_empty_clause()) return 0;
  Counter counter;
  return counter.count(formula);
}

ExtReal exact_count(const Cnf& formula, std::uint32_t over, std::uint32_t limit) {
  if (over < formula.vars().size()) throw std::invalid_argument("exact_count: universe smaller than Vars(formula)");
  std::uint64_t own = count_models_over_own_vars(formula, limit);
  ExtReal result = ExtReal::from_double(static_cast<double>(own));
  return result * ExtReal::pow2(static_cast<std::int64_t>(over - formula.vars().size()));
}

}  // namespace pkc
