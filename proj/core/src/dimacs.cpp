#include "pkc/dimacs.hpp"

#include <charconv>
#include <sstream>

namespace pkc {

namespace {

bool parse_int(std::string_view token, long long& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

}  // namespace

Cnf parse_dimacs(std::istream& in, std::vector<std::string>* warnings) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  long long num_vars = 0;
  long long declared_clauses = 0;
  std::vector<std::vector<Literal>> clauses;
  std::vector<Literal> current;
  bool open_clause = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    char lead = line[first];
    if (lead == 'c') continue;
    if (lead == '%') break;  // SATLIB end marker
    std::istringstream tokens(line);
    if (lead == 'p') {
      if (have_header) throw DimacsError(line_no, "second problem line");
      std::string p, kind, v, c;
      std::string extra;
      tokens >> p >> kind >> v >> c;
      if (p != "p" || kind != "cnf" || !parse_int(v, num_vars) || !parse_int(c, declared_clauses) ||
          num_vars < 0 || declared_clauses < 0 || (tokens >> extra))
        throw DimacsError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      if (num_vars > 0x3fffffff) throw DimacsError(line_no, "variable count too large");
      have_header = true;
      continue;
    }
    if (!have_header) throw DimacsError(line_no, "clause data before 'p cnf' header");
    std::string token;
    while (tokens >> token) {
      long long value = 0;
      if (!parse_int(token, value)) throw DimacsError(line_no, "bad token '" + token + "'");
      if (value == 0) {
        clauses.push_back(current);
        current.clear();
        open_clause = false;
        continue;
      }
      long long var = value < 0 ? -value : value;
      if (var > num_vars)
        throw DimacsError(line_no, "literal " + token + " exceeds declared variable count " + std::to_string(num_vars));
      current.push_back(Literal::from_dimacs(static_cast<int>(value)));
      open_clause = true;
    }
  }
  if (!have_header) throw DimacsError(line_no, "missing 'p cnf' header");
  if (open_clause) throw DimacsError(line_no, "last clause is missing its terminating 0");
  if (static_cast<long long>(clauses.size()) != declared_clauses && warnings) {
    warnings->push_back("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                        std::to_string(clauses.size()));
  }
  return Cnf(static_cast<std::uint32_t>(num_vars), clauses);
}

Cnf parse_dimacs(std::string_view text, std::vector<std::string>* warnings) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in, warnings);
}

void write_dimacs(std::ostream& out, const Cnf& formula) {
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    for (Literal l : formula.clause(i)) out << l.dimacs() << ' ';
    out << "0\n";
  }
}

}  // namespace pkc
