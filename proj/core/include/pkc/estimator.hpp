#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "pkc/compiler.hpp"
#include "pkc/ext_real.hpp"

namespace pkc {

/// Per-run budget: a number of MicroKC calls, or a wall-time limit when
/// `samples` is 0. Exactly one must be set.
struct RunBudget {
  std::uint64_t samples = 0;
  std::chrono::milliseconds time{0};
};

struct EstimateReport {
  ExtReal estimate;
  bool unsat = false;
  /// Stopped early through the stop flag.
  bool interrupted = false;
  std::uint64_t seed = 0;
  std::uint32_t variables = 0;
  /// Achieved number of top-level MicroKC calls (N).
  std::uint64_t samples = 0;
  std::uint64_t edges = 0;
  SessionCounters counters;
  CacheStats cache;
  std::chrono::nanoseconds elapsed{0};
};

struct BoundReport {
  ExtReal lower_bound;
  bool unsat = false;
  bool interrupted = false;
  std::uint32_t runs = 0;
  double c = 0.0;
  double confidence = 0.0;
  std::vector<EstimateReport> per_run;
};

/// Drives an existing session until the budget is spent (at least one call
/// unless stopped first) and reports its estimate.
EstimateReport drive_session(CompileSession& session, const RunBudget& budget,
                             const std::atomic<bool>* stop = nullptr);

/// Satisfiability check, then PartialKC and the unbiased estimate at the
/// root. Unsatisfiable input yields estimate 0 with `unsat` set.
EstimateReport run_estimate(const Cnf& formula, const RunBudget& budget, const CompilerConfig& config,
                            const std::atomic<bool>* stop = nullptr);

/// min(estimates) / c. Throws std::invalid_argument on an empty list or
/// c <= 1.
ExtReal markov_lower_bound(std::span<const ExtReal> estimates, double c);

/// Smallest m with 1 - c^-m >= δ.
std::uint32_t plan_runs(double confidence, double c);

/// m independent runs with seeds derive_seed(config.rng_seed, i); the lower
/// bound holds with probability at least 1 - c^-m. `runs` = 0 plans m from
/// `confidence`; otherwise the reported confidence is 1 - c^-runs.
BoundReport bounded_count(const Cnf& formula, double confidence, double c, const RunBudget& budget,
                          const CompilerConfig& config, std::uint32_t runs = 0,
                          const std::atomic<bool>* stop = nullptr);

}  // namespace pkc
