#pragma once

#include <cstdint>
#include <vector>

#include "pkc/cnf.hpp"

namespace pkc::detail {

// Counter-based unit propagation over a fixed clause set, with a trail that
// can be rolled back to any earlier mark. Used for BCP, failed-literal
// probing, DPLL satisfiability and model counting.
class Propagator {
 public:
  explicit Propagator(const Cnf& formula);

  // Enqueues the formula's unit clauses and propagates. False on conflict.
  bool start();
  // Assigns `lit` and propagates. False on conflict; the trail then still
  // holds everything assigned so far and must be rolled back by the caller.
  bool assume(Literal lit);

  std::size_t mark() const { return trail_.size(); }
  void backtrack(std::size_t mark);

  // -1 unassigned, 0 false, 1 true.
  std::int8_t value(Var var) const { return value_[var]; }
  bool is_true(Literal l) const { return value_[l.var()] == (l.positive() ? 1 : 0); }
  const std::vector<Literal>& trail() const { return trail_; }

  // A literal of a shortest not-yet-satisfied clause, or nullopt when every
  // clause is satisfied. Only meaningful after a successful propagation.
  std::optional<Literal> pick_branch() const;

 private:
  bool enqueue(Literal lit);
  bool propagate();

  const Cnf& formula_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::uint32_t>> occurs_;  // by literal code
  std::vector<std::uint32_t> true_count_;
  std::vector<std::uint32_t> false_count_;
  std::vector<Literal> trail_;
  std::size_t processed_ = 0;
  bool has_empty_clause_ = false;
};

}  // namespace pkc::detail
