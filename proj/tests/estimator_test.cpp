#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "pkc/estimator.hpp"

namespace pkc {
namespace {

std::vector<ExtReal> reals(std::initializer_list<double> values) {
  std::vector<ExtReal> out;
  for (double v : values) out.push_back(ExtReal::from_double(v));
  return out;
}

TEST(PlanRuns, Examples) {
  EXPECT_EQ(plan_runs(0.99, 1.9307), 7u);
  EXPECT_EQ(plan_runs(0.5, 2.0), 1u);
  EXPECT_EQ(plan_runs(0.99, 2.0), 7u);
  EXPECT_GE(1.0 - std::pow(1.9307, -7.0), 0.99);
  EXPECT_THROW(plan_runs(0.99, 1.0), std::invalid_argument);
  EXPECT_THROW(plan_runs(1.0, 2.0), std::invalid_argument);
}

TEST(PlanRuns, InvertsConfidence) {
  for (double c : {1.5, 1.9307, 2.0, 4.0})
    for (std::uint32_t m = 1; m <= 20; ++m) {
      double delta = 1.0 - std::pow(c, -static_cast<double>(m));
      if (delta >= 1.0) continue;
      EXPECT_EQ(plan_runs(delta, c), m) << "c " << c << " m " << m;
    }
}

TEST(MarkovLowerBound, Examples) {
  auto est = reals({24, 30, 19.307});
  EXPECT_NEAR(markov_lower_bound(est, 1.9307).to_double(), 10.0, 1e-12);
  std::vector<ExtReal> sevens(7, ExtReal::from_double(24));
  EXPECT_NEAR(markov_lower_bound(sevens, 1.9307).to_double(), 12.43, 0.005);
  EXPECT_THROW(markov_lower_bound(std::vector<ExtReal>{}, 2.0), std::invalid_argument);
  EXPECT_THROW(markov_lower_bound(est, 1.0), std::invalid_argument);
}

TEST(MarkovLowerBound, MonotoneAndPermutationInvariant) {
  std::mt19937_64 rng(3);
  std::vector<ExtReal> est = reals({5, 17, 3.5, 90, 12});
  ExtReal base = markov_lower_bound(est, 2.0);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(est.begin(), est.end(), rng);
    EXPECT_EQ(markov_lower_bound(est, 2.0), base);
  }
  ExtReal prev = markov_lower_bound(est, 1.01);
  for (double c = 1.1; c < 10; c += 0.37) {
    ExtReal cur = markov_lower_bound(est, c);
    EXPECT_LE(cur, prev);
    prev = cur;
  }
}

TEST(RunEstimate, Tautology) {
  CompilerConfig cfg;
  EstimateReport r = run_estimate(Cnf(3, {}), RunBudget{5}, cfg);
  EXPECT_EQ(r.estimate.to_double(), 8.0);
  EXPECT_EQ(r.samples, 5u);
  EXPECT_FALSE(r.unsat);
}

TEST(RunEstimate, UnsatisfiableFlagged) {
  CompilerConfig cfg;
  EstimateReport r = run_estimate(Cnf::from_dimacs(1, {{1}, {-1}}), RunBudget{5}, cfg);
  EXPECT_TRUE(r.unsat);
  EXPECT_TRUE(r.estimate.is_zero());
}

TEST(RunEstimate, BudgetValidation) {
  CompilerConfig cfg;
  EXPECT_THROW(run_estimate(Cnf(3, {}), RunBudget{}, cfg), std::invalid_argument);
  EXPECT_THROW(run_estimate(Cnf(3, {}), RunBudget{4, std::chrono::milliseconds(10)}, cfg), std::invalid_argument);
}

TEST(RunEstimate, TimeBudgetRecordsAchievedN) {
  CompilerConfig cfg;
  cfg.trivial_var_limit = 3;
  EstimateReport r = run_estimate(test::satisfiable_kcnf(20, 70, 2), RunBudget{0, std::chrono::milliseconds(50)}, cfg);
  EXPECT_GE(r.samples, 1u);
  EXPECT_EQ(r.counters.samples, r.samples);
  EXPECT_GE(r.elapsed, std::chrono::milliseconds(50));
}

TEST(RunEstimate, StopFlag) {
  std::atomic<bool> stop{true};
  CompilerConfig cfg;
  EstimateReport r = run_estimate(test::example_formula(), RunBudget{100}, cfg, &stop);
  EXPECT_TRUE(r.interrupted);
  EXPECT_EQ(r.samples, 0u);
}

TEST(RunEstimate, WithinFactorTwoMostOfTheTime) {
  Cnf f = test::satisfiable_kcnf(12, 40, 77);
  double exact = static_cast<double>(test::brute_force_count(f));
  CompilerConfig cfg;
  cfg.trivial_var_limit = 3;
  int good = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    cfg.rng_seed = t;
    double z = run_estimate(f, RunBudget{1000}, cfg).estimate.to_double();
    good += z >= exact / 2 && z <= exact * 2;
  }
  EXPECT_GE(good, 95);
}

TEST(BoundedCount, SevenRunsAndDerivedSeeds) {
  CompilerConfig cfg;
  cfg.rng_seed = 9;
  cfg.trivial_var_limit = 2;
  BoundReport r = bounded_count(test::example_formula(), 0.99, 1.9307, RunBudget{20}, cfg);
  ASSERT_EQ(r.per_run.size(), 7u);
  EXPECT_EQ(r.runs, 7u);
  std::vector<ExtReal> est;
  for (std::size_t i = 0; i < r.per_run.size(); ++i) {
    EXPECT_EQ(r.per_run[i].seed, derive_seed(9, i));
    est.push_back(r.per_run[i].estimate);
  }
  EXPECT_EQ(r.lower_bound, markov_lower_bound(est, 1.9307));
  EXPECT_LE(r.confidence, 1.0 - std::pow(1.9307, -7.0));
}

TEST(BoundedCount, TautologyBound) {
  CompilerConfig cfg;
  BoundReport r = bounded_count(Cnf(2, {}), 0.99, 1.9307, RunBudget{3}, cfg);
  EXPECT_NEAR(r.lower_bound.to_double(), 4.0 / 1.9307, 1e-12);
}

TEST(BoundedCount, ExplicitRunCount) {
  CompilerConfig cfg;
  BoundReport r = bounded_count(Cnf(2, {}), 0.99, 2.0, RunBudget{1}, cfg, 3);
  EXPECT_EQ(r.per_run.size(), 3u);
  EXPECT_DOUBLE_EQ(r.confidence, 0.875);
}

TEST(BoundedCount, Unsat) {
  CompilerConfig cfg;
  BoundReport r = bounded_count(Cnf::from_dimacs(1, {{1}, {-1}}), 0.99, 2.0, RunBudget{1}, cfg);
  EXPECT_TRUE(r.unsat);
  EXPECT_TRUE(r.per_run.empty());
}

}  // namespace
}  // namespace pkc
