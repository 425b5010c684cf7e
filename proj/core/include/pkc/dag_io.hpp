#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pkc/dag.hpp"

namespace pkc {

class DagFormatError : public std::runtime_error {
 public:
  DagFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Text format, one node per line in topological order:
///
///   pddnnf <universe> <node_count>
///   F | T | ? | K <count> <var_count> | L <±var>
///   D <var> <lo_id> <hi_id> <p0> <p1> <f0> <f1>
///   A <k> <id_1> ... <id_k>
///   <root_id>
///
/// Ids are 0-based node line numbers. Only nodes reachable from the root are
/// written, in a deterministic post-order; literal vertices become L lines.
void write_dag(std::ostream& out, const Dag& dag);
std::string dag_to_string(const Dag& dag);

/// Parses the format above and validates the result; throws DagFormatError
/// on malformed input, dangling ids or invariant violations.
Dag parse_dag(std::istream& in);
Dag parse_dag(std::string_view text);

}  // namespace pkc
