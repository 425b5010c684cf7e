#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pkc/cnf.hpp"

namespace pkc {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads DIMACS CNF. Tautologies are dropped and duplicate literals merged;
/// duplicate clauses are kept. A clause-count mismatch is reported through
/// `warnings` (when given) instead of failing.
Cnf parse_dimacs(std::istream& in, std::vector<std::string>* warnings = nullptr);
Cnf parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr);

void write_dimacs(std::ostream& out, const Cnf& formula);

}  // namespace pkc
