#pragma once

#include <cstdint>
#include <functional>

#include "pkc/dag.hpp"
#include "pkc/rng.hpp"

namespace pkc {

/// Estimated marginal P(var = 1) at a decision vertex of the full DAG.
using MarginalFn = std::function<double(const Dag& full, NodeId decision)>;

/// Randomly partial DAG from a full one: labels each decision with p from
/// `marginal` (forced to 0/1 next to ⊥), samples N times counting arc
/// visits, then replaces every unvisited non-⊥ child with a fresh unknown
/// leaf. Literal vertices keep their canonical labels. Throws
/// std::invalid_argument for N = 0 or an unsatisfiable root.
Dag random_part(const Dag& full, std::uint64_t samples, const MarginalFn& marginal, BranchSampler& sampler);

}  // namespace pkc
