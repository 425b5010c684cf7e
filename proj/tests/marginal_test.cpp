#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pkc/counting.hpp"
#include "pkc/dag_io.hpp"
#include "pkc/dag_ops.hpp"
#include "pkc/marginal.hpp"

namespace pkc {
namespace {

using test::example_formula;

// P(x = 1) among the models, by enumeration.
double true_marginal(const Cnf& f, Var x) {
  Literal l(x, true);
  auto g = condition(f, std::span<const Literal>(&l, 1));
  double with = g ? static_cast<double>(test::brute_force_count(*g)) / 2 : 0.0;
  return with / static_cast<double>(test::brute_force_count(f));
}

TEST(PartialObddl, ExampleStructure) {
  Dag dag = partial_obddl(example_formula(), {1, 2});
  EXPECT_TRUE(validate(dag).empty());
  // ⟨x1, ⟨x2, ?, ?⟩, ⟨∧, {⟨x2⟩, ?}⟩⟩
  const Decision& root = dag.decision(dag.root());
  EXPECT_EQ(root.var, 1u);
  const Decision& lo = dag.decision(root.lo);
  EXPECT_EQ(lo.var, 2u);
  EXPECT_TRUE(dag.holds<UnknownLeaf>(lo.lo));
  EXPECT_TRUE(dag.holds<UnknownLeaf>(lo.hi));
  const auto& hi = std::get<Decomposition>(dag.node(root.hi));
  ASSERT_EQ(hi.children.size(), 2u);
  EXPECT_EQ(dag.literal_of(hi.children[0]), Literal(2, true));
  EXPECT_TRUE(dag.holds<UnknownLeaf>(hi.children[1]));
}

TEST(PartialObddl, ExampleMarginalIsOneThird) {
  EXPECT_NEAR(probe_marginal(example_formula(), 1, {1, 2}, 4096), 1.0 / 3.0, 1e-9);
}

TEST(PartialObddl, ForcedLiteralGivesOne) {
  EXPECT_NEAR(probe_marginal(Cnf::from_dimacs(1, {{1}}), 1, {1}, 4096), 1.0, 1e-12);
  // A probe over x1 alone learns nothing about the example formula.
  EXPECT_NEAR(probe_marginal(example_formula(), 1, {1}, 4096), 0.5, 1e-12);
}

TEST(PartialObddl, SmallFormulas) {
  Cnf f = Cnf::from_dimacs(2, {{1, 2}, {-1, 2}});
  EXPECT_NEAR(probe_marginal(f, 1, {1}, 4096), 0.5, 1e-12);
  Cnf unsat = Cnf::from_dimacs(2, {{1, 2}, {1, -2}, {-1, 2}, {-1, -2}});
  EXPECT_TRUE(partial_obddl(unsat, {1, 2}).holds<FalseLeaf>(partial_obddl(unsat, {1, 2}).root()));
  EXPECT_EQ(probe_marginal(unsat, 1, {1, 2}, 4096), 0.5);
}

TEST(PartialObddl, FullOrderIsExact) {
  // With every variable in the order and no budget cap the OBDD-L is
  // complete, so its count and marginals are exact.
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Cnf f = test::satisfiable_kcnf(9, 30, seed);
    std::vector<Var> order{1, 2, 3, 4, 5, 6, 7, 8, 9};
    Dag dag = partial_obddl(f, order, 1u << 20);
    ASSERT_TRUE(validate(dag).empty());
    ASSERT_FALSE(has_unknown(dag, dag.root()));
    EXPECT_EQ(count_models(dag, dag.root()).to_double(), static_cast<double>(test::brute_force_count(f)));
    for (Var x : f.vars()) EXPECT_NEAR(marginal_from_dag(dag, x), true_marginal(f, x), 1e-12);
  }
}

TEST(PartialObddl, BudgetTruncates) {
  Cnf f = test::satisfiable_kcnf(12, 40, 3);
  Dag dag = partial_obddl(f, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, 3);
  EXPECT_TRUE(validate(dag).empty());
  EXPECT_TRUE(has_unknown(dag, dag.root()));
}

TEST(ProbeVars, GreedyCooccurrence) {
  // x1 shares two clauses with x3, one with x2; x4 is isolated from x1.
  Cnf f = Cnf::from_dimacs(5, {{1, 3}, {-1, 3, 5}, {1, 2}, {4, 5}});
  EXPECT_EQ(select_probe_vars(f, 1, 1), (std::vector<Var>{1}));
  EXPECT_EQ(select_probe_vars(f, 1, 3), (std::vector<Var>{1, 3, 2}));
  EXPECT_EQ(select_probe_vars(f, 1, 10).size(), 5u);
}

TEST(EstimateMarginal, ClampedAwayFromZeroAndOne) {
  ProbeConfig cfg;
  cfg.probe_width = 1;
  double p = estimate_marginal(Cnf::from_dimacs(3, {{1}, {2, 3}}), 1, cfg);
  EXPECT_DOUBLE_EQ(p, 1.0 - 1.0 / 8.0);
  p = estimate_marginal(Cnf::from_dimacs(3, {{-1}, {2, 3}}), 1, cfg);
  EXPECT_DOUBLE_EQ(p, 1.0 / 8.0);
  cfg.probe_width = 2;
  EXPECT_NEAR(estimate_marginal(example_formula(), 1, cfg), 1.0 / 3.0, 1e-9);
}

TEST(EstimateMarginal, WideProbeIsExactOnSmallFormulas) {
  ProbeConfig cfg;
  cfg.probe_width = 64;
  cfg.node_budget = 1u << 20;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Cnf f = test::satisfiable_kcnf(8, 20, seed);
    for (Var x : f.vars()) {
      double eps = 1.0 / (2.0 * f.vars().size() + 2.0);
      double expected = std::clamp(true_marginal(f, x), eps, 1 - eps);
      EXPECT_NEAR(estimate_marginal(f, x, cfg), expected, 1e-12);
    }
  }
}

TEST(ScriptedMarginal, ReplaysThenThrows) {
  ScriptedMarginalEstimator m({0.2, 0.5});
  Cnf f = example_formula();
  EXPECT_EQ(m.estimate(f, 1), 0.2);
  EXPECT_EQ(m.estimate(f, 2), 0.5);
  EXPECT_THROW(m.estimate(f, 3), ScriptExhausted);
}

}  // namespace
}  // namespace pkc
