#include "propagator.hpp"

#include <limits>

namespace pkc::detail {

Propagator::Propagator(const Cnf& formula)
    : formula_(formula),
      value_(formula.num_vars() + 1, -1),
      occurs_(2 * (formula.num_vars() + 1)),
      true_count_(formula.num_clauses(), 0),
      false_count_(formula.num_clauses(), 0) {
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    auto c = formula.clause(i);
    if (c.empty()) has_empty_clause_ = true;
    for (Literal l : c) occurs_[l.code()].push_back(static_cast<std::uint32_t>(i));
  }
}

bool Propagator::start() {
  if (has_empty_clause_) return false;
  for (std::size_t i = 0; i < formula_.num_clauses(); ++i) {
    auto c = formula_.clause(i);
    if (c.size() == 1 && !enqueue(c[0])) return false;
  }
  return propagate();
}

bool Propagator::assume(Literal lit) {
  if (has_empty_clause_) return false;
  if (!enqueue(lit)) return false;
  return propagate();
}

bool Propagator::enqueue(Literal lit) {
  std::int8_t want = lit.positive() ? 1 : 0;
  std::int8_t cur = value_[lit.var()];
  if (cur >= 0) return cur == want;
  value_[lit.var()] = want;
  trail_.push_back(lit);
  return true;
}

bool Propagator::propagate() {
  while (processed_ < trail_.size()) {
    Literal lit = trail_[processed_++];
    for (std::uint32_t c : occurs_[lit.code()]) ++true_count_[c];
    bool conflict = false;
    for (std::uint32_t c : occurs_[(~lit).code()]) {
      std::uint32_t fc = ++false_count_[c];
      if (conflict || true_count_[c] != 0) continue;
      auto clause = formula_.clause(c);
      if (fc == clause.size()) {
        conflict = true;
      } else if (fc + 1 == clause.size()) {
        for (Literal other : clause) {
          std::int8_t v = value_[other.var()];
          if (v < 0) {
            enqueue(other);
            break;
          }
        }
      }
    }
    if (conflict) return false;
  }
  // Literals enqueued but contradicted are caught when processed; reaching
  // here means every queued literal was processed without a falsified clause.
  return true;
}

void Propagator::backtrack(std::size_t mark) {
  while (trail_.size() > mark) {
    Literal lit = trail_.back();
    trail_.pop_back();
    if (trail_.size() < processed_) {
      for (std::uint32_t c : occurs_[lit.code()]) --true_count_[c];
      for (std::uint32_t c : occurs_[(~lit).code()]) --false_count_[c];
    }
    value_[lit.var()] = -1;
  }
  if (processed_ > trail_.size()) processed_ = trail_.size();
}

std::optional<Literal> Propagator::pick_branch() const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::optional<Literal> pick;
  for (std::size_t i = 0; i < formula_.num_clauses(); ++i) {
    if (true_count_[i] != 0) continue;
    auto c = formula_.clause(i);
    std::size_t open = c.size() - false_count_[i];
    if (open < best) {
      for (Literal l : c) {
        if (value_[l.var()] < 0) {
          best = open;
          pick = l;
          break;
        }
      }
    }
  }
  return pick;
}

}  // namespace pkc::detail
