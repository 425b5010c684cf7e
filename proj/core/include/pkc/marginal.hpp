#pragma once

#include <cstdint>
#include <vector>

#include "pkc/cnf.hpp"
#include "pkc/dag.hpp"

namespace pkc {

struct ProbeConfig {
  /// Number of variables the probing compilation may branch on.
  std::uint32_t probe_width = 8;
  /// Cap on recursive PartialOBDDL calls; exhausted calls yield unknown leaves.
  std::uint32_t node_budget = 4096;
};

/// Partial OBDD with implied literals over the ordered variable list
/// `order`. Decision vertices carry placeholder labels (p = 0.5 unless a
/// child is ⊥; f = 1 on arcs to compiled children), enough to validate; the
/// result is only meant for counting.
Dag partial_obddl(const Cnf& formula, const std::vector<Var>& order, std::uint32_t node_budget = 4096);

/// Probe order for `x`: x first, then greedily the variable occurring in
/// most clauses together with already chosen ones (ties by index), up to
/// `width` variables.
std::vector<Var> select_probe_vars(const Cnf& formula, Var x, std::uint32_t width);

/// P(x = 1) of the DAG after substituting ⊤ for every unknown leaf; 0.5 when
/// the DAG has no models.
double marginal_from_dag(const Dag& dag, Var x);

/// Unclamped marginal estimate from a PartialOBDDL probe over `order`.
double probe_marginal(const Cnf& formula, Var x, const std::vector<Var>& order, std::uint32_t node_budget);

/// Marginal estimate used for proposals: probe_marginal over
/// select_probe_vars, clamped to [ε, 1-ε] with ε = 1 / (2|Vars(φ)| + 2).
double estimate_marginal(const Cnf& formula, Var x, const ProbeConfig& config);

/// Proposal source used by the compiler at new decision vertices.
class MarginalEstimator {
 public:
  virtual ~MarginalEstimator() = default;
  /// Estimated P(x = 1) for φ.
  virtual double estimate(const Cnf& formula, Var x) = 0;
};

class ProbeMarginalEstimator final : public MarginalEstimator {
 public:
  explicit ProbeMarginalEstimator(ProbeConfig config) : config_(config) {}
  double estimate(const Cnf& formula, Var x) override { return estimate_marginal(formula, x, config_); }

 private:
  ProbeConfig config_;
};

/// Returns a fixed sequence of marginals (test and replay hook).
class ScriptedMarginalEstimator final : public MarginalEstimator {
 public:
  explicit ScriptedMarginalEstimator(std::vector<double> values) : values_(std::move(values)) {}
  double estimate(const Cnf& formula, Var x) override;

 private:
  std::vector<double> values_;
  std::size_t next_ = 0;
};

}  // namespace pkc
