#include "fixtures.hpp"

#include <random>
#include <stdexcept>

#include "pkc/counting.hpp"

namespace pkc::test {

namespace {

Decision make_decision(Var var, NodeId lo, NodeId hi, double p0, std::uint64_t f0, std::uint64_t f1) {
  Decision d;
  d.var = var;
  d.lo = lo;
  d.hi = hi;
  d.p0 = p0;
  d.p1 = 1.0 - p0;
  d.f0 = f0;
  d.f1 = f1;
  return d;
}

Literal pos(Var v) { return Literal(v, true); }
Literal neg(Var v) { return Literal(v, false); }

}  // namespace

Dag full_example_dag() {
  Dag dag(6);
  NodeId v00 = dag.add_decision(make_decision(4, dag.add_literal(pos(6)), dag.add_literal(neg(6)), 0.4, 1, 1));
  NodeId v01 = dag.add_decision(make_decision(3, dag.add_literal(pos(5)), dag.true_leaf(), 0.5, 1, 1));
  NodeId v0 = dag.add_decision(make_decision(2, v00, v01, 0.5, 1, 1));
  NodeId v1 = dag.add_decomposition({dag.add_literal(pos(2)), v00, dag.add_literal(pos(5))});
  dag.set_root(dag.add_decision(make_decision(1, v0, v1, 0.8, 1, 1)));
  return dag;
}

Dag partial_example_dag() {
  Dag dag(6);
  NodeId v00 = dag.add_decision(make_decision(4, dag.add_unknown(), dag.add_literal(neg(6)), 0.4, 0, 2));
  NodeId v0 = dag.add_decision(make_decision(2, v00, dag.add_unknown(), 0.5, 1, 0));
  NodeId v1 = dag.add_decomposition({dag.add_literal(pos(2)), v00, dag.add_literal(pos(5))});
  dag.set_root(dag.add_decision(make_decision(1, v0, v1, 0.8, 1, 1)));
  return dag;
}

Cnf example_formula() {
  return Cnf::from_dimacs(6, {{2, 4, 6},
                              {2, -4, -6},
                              {1, -2, 3, 5},
                              {-1, 4, 6},
                              {-1, -4, -6},
                              {-1, 2, -4},
                              {-1, 2, 4},
                              {-1, -2, 5}});
}

Cnf random_kcnf(std::uint32_t vars, std::uint32_t clauses, std::uint64_t seed, std::uint32_t k) {
  if (k > vars) throw std::invalid_argument("clause width exceeds variable count");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(1, vars);
  std::vector<std::vector<int>> out;
  for (std::uint32_t i = 0; i < clauses; ++i) {
    std::vector<int> clause;
    while (clause.size() < k) {
      int v = static_cast<int>(pick(rng));
      bool fresh = true;
      for (int l : clause) fresh = fresh && std::abs(l) != v;
      if (fresh) clause.push_back(rng() & 1 ? v : -v);
    }
    out.push_back(clause);
  }
  return Cnf::from_dimacs(vars, out);
}

bool brute_force_satisfies(const Cnf& formula, const std::vector<bool>& values) {
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    bool sat = false;
    for (Literal l : formula.clause(i)) sat = sat || values[l.var()] == l.positive();
    if (!sat) return false;
  }
  return true;
}

std::uint64_t brute_force_count(const Cnf& formula) {
  const std::uint32_t n = formula.num_vars();
  if (n > 30) throw std::invalid_argument("brute force limited to 30 variables");
  std::vector<bool> values(n + 1);
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (std::uint32_t v = 1; v <= n; ++v) values[v] = (bits >> (v - 1)) & 1;
    count += brute_force_satisfies(formula, values);
  }
  return count;
}

Cnf satisfiable_kcnf(std::uint32_t vars, std::uint32_t clauses, std::uint64_t seed) {
  for (std::uint64_t s = seed;; s += 0x9e3779b97f4a7c15ULL) {
    Cnf f = random_kcnf(vars, clauses, s);
    if (is_satisfiable(f)) return f;
  }
}

}  // namespace pkc::test
