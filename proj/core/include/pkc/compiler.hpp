#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "pkc/cnf.hpp"
#include "pkc/dag.hpp"
#include "pkc/marginal.hpp"
#include "pkc/rng.hpp"

namespace pkc {

enum class VariableHeuristic { kMaxOccurrence, kMinIndex };

struct CompilerConfig {
  /// Formulas with at most this many variables become known leaves (1..26).
  std::uint32_t trivial_var_limit = 12;
  ProbeConfig probe;
  VariableHeuristic variable_heuristic = VariableHeuristic::kMaxOccurrence;
  /// false: every call builds an independent sample (single mode).
  bool cache_enabled = true;
  std::uint64_t rng_seed = 0;
};

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t replacements = 0;
  std::uint64_t size = 0;
};

struct SessionCounters {
  /// Top-level MicroKC calls (N).
  std::uint64_t samples = 0;
  /// Every MicroKC invocation, recursive ones included.
  std::uint64_t micro_kc_calls = 0;
  std::uint64_t decision_samples = 0;
  std::uint64_t probe_calls = 0;
  std::uint64_t guard_repairs = 0;
};

/// One incremental compilation of a fixed formula into a randomly partial
/// Decision-DNNF. Not thread-safe.
class CompileSession {
 public:
  /// Throws std::invalid_argument on a bad config.
  CompileSession(const Cnf& formula, CompilerConfig config);
  /// Injects the branch sampler and marginal source (replay and tests).
  CompileSession(const Cnf& formula, CompilerConfig config, std::unique_ptr<BranchSampler> sampler,
                 std::unique_ptr<MarginalEstimator> marginals);

  CompileSession(CompileSession&&) noexcept;
  CompileSession& operator=(CompileSession&&) noexcept;
  ~CompileSession();

  /// One top-level MicroKC call on the session formula; returns its root
  /// and makes it the DAG root. The formula must be satisfiable. In single
  /// mode every call starts from an empty DAG, so the DAG holds only the
  /// latest sample.
  NodeId sample();

  /// MicroKC on an arbitrary satisfiable formula over the session universe.
  NodeId micro_kc(const Cnf& formula);

  const Cnf& formula() const { return formula_; }
  const CompilerConfig& config() const { return config_; }
  const Dag& dag() const { return dag_; }
  NodeId root() const { return dag_.root(); }
  /// Unbiased estimate of the model count over the universe. Single mode
  /// averages the per-sample estimates.
  ExtReal estimate() const;

  const CacheStats& cache_stats() const { return stats_; }
  const SessionCounters& counters() const { return counters_; }

 private:
  struct Entry {
    NodeId node;
    /// Sub-formulas whose results make up the node: the components of a
    /// decomposition vertex, or the single formula an alias stands for.
    std::vector<Cnf> parts;
  };

  NodeId create(const Cnf& formula, Entry& entry);
  NodeId revisit(const Cnf& formula, const Entry& entry);
  NodeId conjoin(const std::vector<Cnf>& parts, std::optional<NodeId> reuse);
  Var choose_var(const Cnf& formula) const;

  Cnf formula_;
  CompilerConfig config_;
  Dag dag_;
  std::unique_ptr<BranchSampler> sampler_;
  std::unique_ptr<MarginalEstimator> marginals_;
  std::unordered_map<ComponentKey, Entry> cache_;
  CacheStats stats_;
  SessionCounters counters_;
  /// Single mode: sum of the per-sample estimates.
  ExtReal sample_sum_;
};

/// PartialKC: N top-level MicroKC calls. Throws std::invalid_argument when
/// φ is unsatisfiable or N = 0.
CompileSession partial_kc(const Cnf& formula, std::uint64_t samples, const CompilerConfig& config);

}  // namespace pkc
