#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "pkc/dag_io.hpp"
#include "pkc/dag_ops.hpp"

namespace pkc {
namespace {

// Random valid partial Decision-DNNF over the variables in `scope`.
class RandomDagBuilder {
 public:
  RandomDagBuilder(std::uint32_t universe, std::uint64_t seed) : dag_(universe), rng_(seed) {}

  Dag build() {
    std::vector<Var> scope(dag_.universe());
    for (Var v = 1; v <= dag_.universe(); ++v) scope[v - 1] = v;
    std::shuffle(scope.begin(), scope.end(), rng_);
    NodeId root = node(scope, 0, false);
    if (dag_.holds<FalseLeaf>(root)) root = dag_.true_leaf();
    dag_.set_root(root);
    return std::move(dag_);
  }

 private:
  std::uint32_t pick(std::uint32_t n) { return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng_); }

  NodeId leaf(const std::vector<Var>& scope) {
    switch (pick(scope.empty() ? 3 : 5)) {
      case 0: return dag_.true_leaf();
      case 1: return dag_.add_unknown();
      case 2: return dag_.false_leaf();
      case 3: return dag_.add_literal(Literal(scope[0], pick(2) == 1));
      default: {
        auto vc = static_cast<std::uint32_t>(scope.size());
        std::uint64_t count = 1 + rng_() % ((std::uint64_t{1} << std::min<std::uint32_t>(vc, 40)) - 0);
        return dag_.add_known(ExtReal::from_double(static_cast<double>(count)), vc);
      }
    }
  }

  NodeId node(std::vector<Var> scope, int depth, bool under_and) {
    if (scope.empty() || depth > 5 || pick(4) == 0) return leaf(scope);
    if (!under_and && scope.size() >= 2 && pick(3) == 0) {
      std::size_t parts = 2 + pick(std::min<std::uint32_t>(3, static_cast<std::uint32_t>(scope.size()) - 1));
      std::vector<std::vector<Var>> split(parts);
      for (std::size_t i = 0; i < scope.size(); ++i) split[i < parts ? i : pick(static_cast<std::uint32_t>(parts))].push_back(scope[i]);
      std::vector<NodeId> kids;
      for (auto& s : split) {
        NodeId k = node(s, depth + 1, true);
        if (dag_.holds<FalseLeaf>(k)) k = dag_.true_leaf();
        kids.push_back(k);
      }
      return dag_.add_decomposition(kids);
    }
    Var x = scope.back();
    scope.pop_back();
    Decision d;
    d.var = x;
    d.lo = node(scope, depth + 1, false);
    d.hi = node(scope, depth + 1, false);
    if (dag_.holds<FalseLeaf>(d.lo) && dag_.holds<FalseLeaf>(d.hi)) d.hi = dag_.true_leaf();
    d.p1 = dag_.holds<FalseLeaf>(d.hi) ? 0.0 : dag_.holds<FalseLeaf>(d.lo) ? 1.0 : (1 + pick(999)) / 1000.0;
    d.p0 = 1.0 - d.p1;
    for (bool b : {false, true}) {
      NodeId ch = d.child(b);
      d.f(b) = dag_.holds<FalseLeaf>(ch) || dag_.holds<UnknownLeaf>(ch) ? 0 : 1 + pick(50);
    }
    return dag_.add_decision(d);
  }

  Dag dag_;
  std::mt19937_64 rng_;
};

TEST(DagIo, PartialExampleText) {
  std::string text = dag_to_string(test::partial_example_dag());
  EXPECT_EQ(text,
            "pddnnf 6 9\n"
            "?\n"
            "L -6\n"
            "D 4 0 1 0.4 0.6 0 2\n"
            "?\n"
            "D 2 2 3 0.5 0.5 1 0\n"
            "L 2\n"
            "L 5\n"
            "A 3 5 2 6\n"
            "D 1 4 7 0.8 0.2 1 1\n"
            "8\n");
}

TEST(DagIo, FixtureFileParses) {
  std::ifstream in(PKC_FIXTURE_DIR "/partial_example.dag");
  ASSERT_TRUE(in);
  Dag dag = parse_dag(in);
  EXPECT_TRUE(validate(dag).empty());
  EXPECT_EQ(dag_to_string(dag), dag_to_string(test::partial_example_dag()));
  EXPECT_TRUE(is_part_of(dag, test::full_example_dag()));
}

TEST(DagIo, RoundTripRandomDags) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Dag dag = RandomDagBuilder(3 + seed % 12, seed).build();
    ASSERT_TRUE(validate(dag).empty()) << "seed " << seed << ": " << validate(dag).front();
    std::string text = dag_to_string(dag);
    Dag back = parse_dag(text);
    EXPECT_EQ(dag_to_string(back), text) << "seed " << seed;
    EXPECT_EQ(back.universe(), dag.universe());
    EXPECT_EQ(edge_count(back), edge_count(dag));
    EXPECT_EQ(bound(back, back.root(), BoundMode::kUpper), bound(dag, dag.root(), BoundMode::kUpper));
  }
}

TEST(DagIo, HugeKnownCountSurvives) {
  Dag dag(2000);
  dag.set_root(dag.add_known(ExtReal::from_decimal("5.62E+310"), 1100));
  Dag back = parse_dag(dag_to_string(dag));
  EXPECT_LT(ExtReal::relative_difference(count_models(back, back.root()), count_models(dag, dag.root())), 1e-12);
}

void expect_error(const std::string& text, const std::string& fragment) {
  try {
    parse_dag(text);
    FAIL() << "accepted: " << text;
  } catch (const DagFormatError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(DagIo, Errors) {
  expect_error("", "empty");
  expect_error("pdnnf 2 1\nT\n0\n", "header");
  expect_error("pddnnf 2 1\nX\n0\n", "unknown node kind");
  expect_error("pddnnf 2 2\nT\nD 1 0 5 0.5 0.5 1 1\n1\n", "dangling");
  expect_error("pddnnf 2 1\nT\n", "root");
  expect_error("pddnnf 2 1\nT\n0\n0\n", "trailing");
  // f_b = 0 on an arc whose child is not an unknown leaf.
  expect_error("pddnnf 2 3\nT\nL 2\nD 1 0 1 0.5 0.5 0 1\n2\n", "invariant violation");
}

}  // namespace
}  // namespace pkc
