#pragma once

#include <cstdint>
#include <vector>

#include "pkc/cnf.hpp"
#include "pkc/dag.hpp"

namespace pkc::test {

/// Full Decision-DNNF of the six-variable running example: 24 models.
Dag full_example_dag();
/// Its randomly partial counterpart after two MicroKC calls.
Dag partial_example_dag();
/// (x2∨x4∨x6)(x2∨¬x4∨¬x6)(x1∨¬x2∨x3∨x5)(¬x1∨x4∨x6)(¬x1∨¬x4∨¬x6)
/// (¬x1∨x2∨¬x4)(¬x1∨x2∨x4)(¬x1∨¬x2∨x5) over six variables.
Cnf example_formula();

/// Random k-CNF: each clause draws k distinct variables and random signs.
Cnf random_kcnf(std::uint32_t vars, std::uint32_t clauses, std::uint64_t seed, std::uint32_t k = 3);

/// Reference model count by enumerating all 2^num_vars assignments.
std::uint64_t brute_force_count(const Cnf& formula);

/// Clause-by-clause evaluation under values indexed by variable.
bool brute_force_satisfies(const Cnf& formula, const std::vector<bool>& values);

/// First satisfiable random 3-CNF in a deterministic seed sequence.
Cnf satisfiable_kcnf(std::uint32_t vars, std::uint32_t clauses, std::uint64_t seed);

}  // namespace pkc::test
