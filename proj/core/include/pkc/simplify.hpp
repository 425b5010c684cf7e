#pragma once

#include <optional>
#include <vector>

#include "pkc/cnf.hpp"

namespace pkc {

struct Propagation {
  Cnf residual;
  /// Unit-implied literals, in propagation order.
  std::vector<Literal> implied;
};

/// Conditions on unit clauses to a fixpoint. nullopt on conflict.
std::optional<Propagation> unit_propagate(const Cnf& formula);

/// Failed-literal probing to a fixpoint: x=b is refuted when unit propagation
/// of φ ∧ (x=b) conflicts. Returns the implied literals (sorted by variable,
/// including their unit consequences), or nullopt when some variable fails
/// both ways. Sound but not complete. Expects a formula without unit clauses.
std::optional<std::vector<Literal>> implied_literals_ibcp(const Cnf& formula);

/// Splits a formula into connected components of its primal graph, without
/// any propagation. Components are canonical and ordered by smallest
/// variable.
std::vector<Cnf> primal_components(const Cnf& formula);

/// unit_propagate, then implied_literals_ibcp; every implied literal becomes
/// a unit-clause formula and the residual is split into primal components.
/// Output is ordered by smallest variable. nullopt when UNSAT is detected.
std::optional<std::vector<Cnf>> decompose_components(const Cnf& formula);

}  // namespace pkc
