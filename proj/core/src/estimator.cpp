#include "pkc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pkc/counting.hpp"
#include "pkc/dag_ops.hpp"

namespace pkc {

namespace {

void check_budget(const RunBudget& budget) {
  if ((budget.samples == 0) == (budget.time.count() <= 0))
    throw std::invalid_argument("exactly one of sample count and time budget must be set");
}

bool stopped(const std::atomic<bool>* stop) { return stop && stop->load(std::memory_order_relaxed); }

}  // namespace

EstimateReport drive_session(CompileSession& session, const RunBudget& budget, const std::atomic<bool>* stop) {
  check_budget(budget);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto deadline = start + budget.time;
  EstimateReport report;
  report.seed = session.config().rng_seed;
  report.variables = session.formula().num_vars();
  for (;;) {
    if (stopped(stop)) {
      report.interrupted = true;
      break;
    }
    session.sample();
    const auto done = session.counters().samples;
    if (budget.samples ? done >= budget.samples : Clock::now() >= deadline) break;
  }
  report.elapsed = Clock::now() - start;
  report.samples = session.counters().samples;
  report.counters = session.counters();
  report.cache = session.cache_stats();
  if (report.samples > 0) {
    report.estimate = session.estimate();
    report.edges = edge_count(session.dag());
  }
  return report;
}

EstimateReport run_estimate(const Cnf& formula, const RunBudget& budget, const CompilerConfig& config,
                            const std::atomic<bool>* stop) {
  check_budget(budget);
  if (!is_satisfiable(formula)) {
    EstimateReport report;
    report.unsat = true;
    report.seed = config.rng_seed;
    report.variables = formula.num_vars();
    return report;
  }
  CompileSession session(formula, config);
  return drive_session(session, budget, stop);
}

ExtReal markov_lower_bound(std::span<const ExtReal> estimates, double c) {
  if (estimates.empty()) throw std::invalid_argument("markov_lower_bound: no estimates");
  if (!(c > 1.0)) throw std::invalid_argument("markov_lower_bound: c must exceed 1");
  return std::min_element(estimates.begin(), estimates.end())->scaled(1.0 / c);
}

std::uint32_t plan_runs(double confidence, double c) {
  if (!(c > 1.0)) throw std::invalid_argument("plan_runs: c must exceed 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("plan_runs: confidence must be in (0, 1)");
  for (std::uint32_t m = 1;; ++m)
    if (1.0 - std::pow(c, -static_cast<double>(m)) >= confidence) return m;
}

BoundReport bounded_count(const Cnf& formula, double confidence, double c, const RunBudget& budget,
                          const CompilerConfig& config, std::uint32_t runs, const std::atomic<bool>* stop) {
  check_budget(budget);
  BoundReport report;
  report.c = c;
  if (runs == 0) {
    report.runs = plan_runs(confidence, c);
    report.confidence = confidence;
  } else {
    if (!(c > 1.0)) throw std::invalid_argument("bounded_count: c must exceed 1");
    report.runs = runs;
    report.confidence = 1.0 - std::pow(c, -static_cast<double>(runs));
  }
  if (!is_satisfiable(formula)) {
    report.unsat = true;
    return report;
  }
  std::vector<ExtReal> estimates;
  for (std::uint32_t i = 0; i < report.runs; ++i) {
    CompilerConfig run_config = config;
    run_config.rng_seed = derive_seed(config.rng_seed, i);
    CompileSession session(formula, run_config);
    EstimateReport run = drive_session(session, budget, stop);
    if (run.samples > 0) estimates.push_back(run.estimate);
    report.per_run.push_back(std::move(run));
    if (report.per_run.back().interrupted) {
      report.interrupted = true;
      break;
    }
  }
  // An interrupted scheme still reports the bound over the finished runs,
  // flagged, since its confidence no longer holds.
  if (!estimates.empty()) report.lower_bound = markov_lower_bound(estimates, c);
  return report;
}

}  // namespace pkc
