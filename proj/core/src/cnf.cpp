#include "pkc/cnf.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pkc {

Literal Literal::from_dimacs(int value) {
  if (value == 0) throw std::invalid_argument("literal 0 is not a literal");
  return Literal(static_cast<Var>(value < 0 ? -static_cast<long long>(value) : value), value > 0);
}

PartialAssignment::PartialAssignment(std::initializer_list<std::pair<const Var, bool>> bindings) {
  for (const auto& [var, value] : bindings) bind(var, value);
}

void PartialAssignment::bind(Var var, bool value) {
  if (!bindings_.emplace(var, value).second)
    throw std::invalid_argument("variable " + std::to_string(var) + " bound twice");
}

std::optional<bool> PartialAssignment::value(Var var) const {
  auto it = bindings_.find(var);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

std::vector<Literal> PartialAssignment::literals() const {
  std::vector<Literal> out;
  out.reserve(bindings_.size());
  for (const auto& [var, value] : bindings_) out.emplace_back(var, value);
  return out;
}

Cnf::Cnf(std::uint32_t num_vars, const std::vector<std::vector<Literal>>& clauses) : num_vars_(num_vars) {
  std::vector<Literal> buf;
  for (const auto& clause : clauses) {
    buf.assign(clause.begin(), clause.end());
    for (Literal l : buf) {
      if (l.var() < 1 || l.var() > num_vars)
        throw std::out_of_range("literal " + std::to_string(l.dimacs()) + " outside 1.." + std::to_string(num_vars));
    }
    std::sort(buf.begin(), buf.end());
    buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
    bool tautology = false;
    for (std::size_t i = 1; i < buf.size(); ++i)
      if (buf[i].var() == buf[i - 1].var()) tautology = true;
    if (tautology) continue;
    lits_.insert(lits_.end(), buf.begin(), buf.end());
    offsets_.push_back(static_cast<std::uint32_t>(lits_.size()));
  }
  collect_vars();
}

Cnf Cnf::from_dimacs(std::uint32_t num_vars, const std::vector<std::vector<int>>& clauses) {
  std::vector<std::vector<Literal>> converted;
  converted.reserve(clauses.size());
  for (const auto& clause : clauses) {
    auto& out = converted.emplace_back();
    for (int v : clause) out.push_back(Literal::from_dimacs(v));
  }
  return Cnf(num_vars, converted);
}

Cnf::Cnf(Normalized, std::uint32_t num_vars, std::vector<Literal> lits, std::vector<std::uint32_t> offsets)
    : num_vars_(num_vars), lits_(std::move(lits)), offsets_(std::move(offsets)) {
  collect_vars();
}

void Cnf::collect_vars() {
  std::vector<char> seen(num_vars_ + 1, 0);
  vars_.clear();
  for (Literal l : lits_) {
    if (!seen[l.var()]) {
      seen[l.var()] = 1;
      vars_.push_back(l.var());
    }
  }
  std::sort(vars_.begin(), vars_.end());
}

std::vector<Var> Cnf::free_vars() const {
  std::vector<Var> out;
  auto it = vars_.begin();
  for (Var v = 1; v <= num_vars_; ++v) {
    if (it != vars_.end() && *it == v) {
      ++it;
      continue;
    }
    out.push_back(v);
  }
  return out;
}

bool Cnf::has_empty_clause() const {
  for (std::size_t i = 0; i < num_clauses(); ++i)
    if (offsets_[i] == offsets_[i + 1]) return true;
  return false;
}

std::optional<Literal> Cnf::as_literal() const {
  if (num_clauses() == 0) return std::nullopt;
  for (std::size_t i = 0; i < num_clauses(); ++i) {
    auto c = clause(i);
    if (c.size() != 1 || c[0] != lits_[0]) return std::nullopt;
  }
  return lits_[0];
}

Cnf Cnf::canonical() const {
  std::vector<std::uint32_t> order(num_clauses());
  std::iota(order.begin(), order.end(), 0u);
  auto less = [this](std::uint32_t a, std::uint32_t b) {
    auto ca = clause(a), cb = clause(b);
    if (ca.size() != cb.size()) return ca.size() < cb.size();
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<Literal> lits;
  lits.reserve(lits_.size());
  std::vector<std::uint32_t> offsets{0};
  offsets.reserve(order.size() + 1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && !less(order[k - 1], order[k])) continue;  // duplicate clause
    auto c = clause(order[k]);
    lits.insert(lits.end(), c.begin(), c.end());
    offsets.push_back(static_cast<std::uint32_t>(lits.size()));
  }
  return Cnf(Normalized{}, num_vars_, std::move(lits), std::move(offsets));
}

bool Cnf::satisfied_by(const std::vector<bool>& values) const {
  for (std::size_t i = 0; i < num_clauses(); ++i) {
    bool sat = false;
    for (Literal l : clause(i)) {
      if (values.at(l.var()) == l.positive()) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

std::optional<Cnf> condition_on_values(const Cnf& formula, const std::vector<std::int8_t>& value) {
  std::vector<Literal> lits;
  lits.reserve(formula.literal_count());
  std::vector<std::uint32_t> offsets{0};
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    std::size_t start = lits.size();
    bool sat = false;
    for (Literal l : formula.clause(i)) {
      std::int8_t v = value[l.var()];
      if (v < 0) {
        lits.push_back(l);
      } else if ((v == 1) == l.positive()) {
        sat = true;
        break;
      }
    }
    if (sat) {
      lits.resize(start);
      continue;
    }
    if (lits.size() == start) return std::nullopt;
    offsets.push_back(static_cast<std::uint32_t>(lits.size()));
  }
  return Cnf(Cnf::Normalized{}, formula.num_vars(), std::move(lits), std::move(offsets)).canonical();
}

}  // namespace

std::optional<Cnf> condition(const Cnf& formula, const PartialAssignment& assignment) {
  std::vector<std::int8_t> value(formula.num_vars() + 1, -1);
  for (const auto& [var, b] : assignment) {
    if (var < 1 || var > formula.num_vars())
      throw std::out_of_range("assignment binds variable " + std::to_string(var) + " outside the formula");
    value[var] = b ? 1 : 0;
  }
  return condition_on_values(formula, value);
}

std::optional<Cnf> condition(const Cnf& formula, std::span<const Literal> true_literals) {
  std::vector<std::int8_t> value(formula.num_vars() + 1, -1);
  for (Literal l : true_literals) {
    if (l.var() < 1 || l.var() > formula.num_vars())
      throw std::out_of_range("literal " + std::to_string(l.dimacs()) + " outside the formula");
    std::int8_t want = l.positive() ? 1 : 0;
    if (value[l.var()] >= 0 && value[l.var()] != want) return std::nullopt;
    value[l.var()] = want;
  }
  return condition_on_values(formula, value);
}

ComponentKey component_key(const Cnf& formula) {
  Cnf canon = formula.canonical();
  ComponentKey key;
  key.bytes.reserve((canon.literal_count() + canon.num_clauses()) * 4);
  auto put = [&key](std::uint32_t word) {
    for (int shift = 0; shift < 32; shift += 8) key.bytes.push_back(static_cast<char>((word >> shift) & 0xffu));
  };
  for (std::size_t i = 0; i < canon.num_clauses(); ++i) {
    // Literal codes are >= 2, so 0 is a safe clause terminator.
    for (Literal l : canon.clause(i)) put(l.code());
    put(0);
  }
  return key;
}

std::string to_string(const Cnf& formula) {
  std::string out;
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    if (i) out += " & ";
    out += '(';
    bool first = true;
    for (Literal l : formula.clause(i)) {
      if (!first) out += " | ";
      first = false;
      out += std::to_string(l.dimacs());
    }
    out += ')';
  }
  return out.empty() ? "T" : out;
}

}  // namespace pkc
