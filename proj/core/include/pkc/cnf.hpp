#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pkc {

/// 1-based variable index, as in DIMACS.
using Var = std::uint32_t;

class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Var var, bool positive) : code_(var * 2u + (positive ? 0u : 1u)) {}

  /// Nonzero DIMACS integer: +v or -v.
  static Literal from_dimacs(int value);

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool positive() const { return (code_ & 1u) == 0; }
  constexpr Literal operator~() const { return from_code(code_ ^ 1u); }
  /// Dense index usable for per-literal tables (var*2 + sign bit).
  constexpr std::uint32_t code() const { return code_; }
  int dimacs() const { return positive() ? static_cast<int>(var()) : -static_cast<int>(var()); }

  static constexpr Literal from_code(std::uint32_t code) {
    Literal l;
    l.code_ = code;
    return l;
  }

  constexpr auto operator<=>(const Literal&) const = default;

 private:
  std::uint32_t code_ = 0;
};

/// Variable bindings ordered by variable index.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  PartialAssignment(std::initializer_list<std::pair<const Var, bool>> bindings);

  /// Throws std::invalid_argument if `var` is already bound.
  void bind(Var var, bool value);
  std::optional<bool> value(Var var) const;
  bool contains(Var var) const { return bindings_.count(var) != 0; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  std::vector<Literal> literals() const;

  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }
  bool operator==(const PartialAssignment&) const = default;

 private:
  std::map<Var, bool> bindings_;
};

/// Canonical byte encoding of a normalized clause set; used as cache key.
struct ComponentKey {
  std::string bytes;
  bool operator==(const ComponentKey&) const = default;
};

/// Clause database over variables 1..num_vars. Every clause is stored sorted
/// by literal, without duplicate literals and without tautologies. Clause
/// order is kept as given unless the formula is canonicalized.
class Cnf {
 public:
  Cnf() = default;
  /// Normalizes each clause; throws std::out_of_range for a variable outside
  /// 1..num_vars.
  Cnf(std::uint32_t num_vars, const std::vector<std::vector<Literal>>& clauses);
  static Cnf from_dimacs(std::uint32_t num_vars, const std::vector<std::vector<int>>& clauses);

  std::uint32_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return offsets_.size() - 1; }
  std::span<const Literal> clause(std::size_t i) const {
    return {lits_.data() + offsets_[i], lits_.data() + offsets_[i + 1]};
  }
  std::size_t literal_count() const { return lits_.size(); }

  /// Variables occurring in some clause, ascending.
  const std::vector<Var>& vars() const { return vars_; }
  /// Declared variables occurring in no clause, ascending.
  std::vector<Var> free_vars() const;

  bool is_true() const { return num_clauses() == 0; }
  bool has_empty_clause() const;
  /// The literal when every clause is the same unit clause.
  std::optional<Literal> as_literal() const;

  /// Clauses sorted by (length, literals) with duplicate clauses removed.
  Cnf canonical() const;

  /// Direct clause evaluation under a total assignment indexed by variable
  /// (index 0 unused).
  bool satisfied_by(const std::vector<bool>& values) const;

  bool operator==(const Cnf& other) const {
    return num_vars_ == other.num_vars_ && lits_ == other.lits_ && offsets_ == other.offsets_;
  }

  /// Trusted construction from already-normalized clauses.
  struct Normalized {};
  Cnf(Normalized, std::uint32_t num_vars, std::vector<Literal> lits, std::vector<std::uint32_t> offsets);

 private:
  void collect_vars();

  std::uint32_t num_vars_ = 0;
  std::vector<Literal> lits_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Var> vars_;
};

/// φ|ω: drops satisfied clauses and falsified literals. nullopt on an empty
/// clause (conflict). The result is canonical.
std::optional<Cnf> condition(const Cnf& formula, const PartialAssignment& assignment);
std::optional<Cnf> condition(const Cnf& formula, std::span<const Literal> true_literals);

ComponentKey component_key(const Cnf& formula);

std::string to_string(const Cnf& formula);

}  // namespace pkc

template <>
struct std::hash<pkc::ComponentKey> {
  std::size_t operator()(const pkc::ComponentKey& key) const noexcept {
    return std::hash<std::string>{}(key.bytes);
  }
};
