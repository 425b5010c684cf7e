#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pkc/cnf.hpp"
#include "pkc/dag.hpp"
#include "pkc/ext_real.hpp"
#include "pkc/rng.hpp"

namespace pkc {

/// Nodes reachable from `at`, children before parents. Throws
/// std::logic_error on a cycle or a dangling child id.
std::vector<NodeId> topological_order(const Dag& dag, NodeId at);

/// Structural and labelling invariants of the DAG reachable from the root.
/// Empty iff the DAG is a well-formed partial Decision-DNNF.
std::vector<std::string> validate(const Dag& dag);

/// Model count over the universe. Throws std::logic_error on an unknown leaf.
ExtReal count_models(const Dag& dag, NodeId at);

/// Probability of the event ω under the distribution the DAG defines.
/// Bound decision variables follow ω's branch (factor 2p_b); unbound ones
/// are marginalised. Throws on unknown or known leaves.
ExtReal assignment_probability(const Dag& dag, NodeId at, const PartialAssignment& assignment);

struct Sample {
  PartialAssignment assignment;
  std::vector<std::pair<NodeId, bool>> visited;
};

/// Draws a partial assignment by following sampled arcs from `at`.
Sample sample_dnnf(const Dag& dag, NodeId at, BranchSampler& sampler);

/// Importance-sampling estimate (1/N) Σ 2^{|X|-|ω_i|} / Pr(ω_i).
ExtReal estimate_from_samples(const Dag& dag, NodeId at, std::span<const PartialAssignment> samples);

enum class BoundMode { kLower, kUpper };

/// Exact lower/upper bound from a partial DAG. Unknown leaves missing from
/// `unknown_values` default to 0 (lower) or 2^|X| (upper).
ExtReal bound(const Dag& dag, NodeId at, BoundMode mode,
              const std::unordered_map<NodeId, ExtReal>& unknown_values = {});

/// Unbiased estimate from a randomly partial DAG using the visit
/// frequencies. `placeholder` is the value given to unknown leaves; it only
/// ever meets a zero coefficient.
ExtReal unbiased_estimate(const Dag& dag, NodeId at, const ExtReal& placeholder = {});

enum class Truth { kFalse, kTrue, kUnknown };

/// Evaluates under a total assignment indexed by variable (index 0 unused).
/// kUnknown iff some visited path reaches an unknown leaf. Throws on a known
/// leaf.
Truth evaluate(const Dag& dag, NodeId at, const std::vector<bool>& values);

/// Part-whole relation between a partial DAG and a full one.
bool is_part_of(const Dag& partial, NodeId partial_at, const Dag& full, NodeId full_at);
inline bool is_part_of(const Dag& partial, const Dag& full) {
  return is_part_of(partial, partial.root(), full, full.root());
}

/// Parent-to-child arcs among nodes reachable from `at`.
std::size_t edge_count(const Dag& dag, NodeId at);
inline std::size_t edge_count(const Dag& dag) { return edge_count(dag, dag.root()); }

/// True if an unknown leaf is reachable from `at`.
bool has_unknown(const Dag& dag, NodeId at);

}  // namespace pkc
