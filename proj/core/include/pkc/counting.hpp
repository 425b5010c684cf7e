#pragma once

#include <cstdint>
#include <stdexcept>

#include "pkc/cnf.hpp"
#include "pkc/ext_real.hpp"

namespace pkc {

inline constexpr std::uint32_t kDefaultOracleLimit = 26;

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Complete DPLL satisfiability check.
bool is_satisfiable(const Cnf& formula);

/// Number of models over Vars(φ). Counting DPLL with unit propagation,
/// component splitting and a per-call component cache. Throws
/// OracleLimitError when |Vars(φ)| > limit; limit must not exceed 62.
std::uint64_t count_models_over_own_vars(const Cnf& formula, std::uint32_t limit = kDefaultOracleLimit);

/// Number of models over a universe of `over` variables (over >= |Vars(φ)|);
/// each variable outside Vars(φ) doubles the count.
ExtReal exact_count(const Cnf& formula, std::uint32_t over, std::uint32_t limit = kDefaultOracleLimit);

}  // namespace pkc
