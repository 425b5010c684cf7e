#include "pkc/dag_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "pkc/dag_ops.hpp"

namespace pkc {

namespace {

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", p);
  return buf;
}

std::string format_count(const ExtReal& count) {
  double d = count.to_double();
  if (std::isfinite(d) && d < 0x1.0p53 && std::floor(d) == d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", d);
    return buf;
  }
  return count.to_decimal(17);
}

// Post-order from the root that treats literal vertices as leaves.
std::vector<NodeId> write_order(const Dag& dag) {
  std::vector<std::uint8_t> seen(dag.size(), 0);
  std::vector<NodeId> order;
  std::vector<std::pair<NodeId, std::size_t>> stack{{dag.root(), 0}};
  seen[dag.root().value] = 1;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    std::vector<NodeId> kids = dag.literal_of(id) ? std::vector<NodeId>{} : children_of(dag.node(id));
    if (next == kids.size()) {
      order.push_back(id);
      stack.pop_back();
      continue;
    }
    NodeId child = kids[next++];
    if (!seen[child.value]) {
      seen[child.value] = 1;
      stack.emplace_back(child, 0);
    }
  }
  return order;
}

}  // namespace

void write_dag(std::ostream& out, const Dag& dag) {
  topological_order(dag, dag.root());  // reject cycles and dangling ids
  std::vector<NodeId> order = write_order(dag);
  std::vector<std::uint32_t> line_of(dag.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) line_of[order[i].value] = static_cast<std::uint32_t>(i);

  out << "pddnnf " << dag.universe() << ' ' << order.size() << '\n';
  for (NodeId id : order) {
    if (auto lit = dag.literal_of(id)) {
      out << "L " << lit->dimacs() << '\n';
      continue;
    }
    const Node& n = dag.node(id);
    if (std::holds_alternative<FalseLeaf>(n)) {
      out << "F\n";
    } else if (std::holds_alternative<TrueLeaf>(n)) {
      out << "T\n";
    } else if (std::holds_alternative<UnknownLeaf>(n)) {
      out << "?\n";
    } else if (const auto* k = std::get_if<KnownLeaf>(&n)) {
      out << "K " << format_count(k->model_count) << ' ' << k->var_count << '\n';
    } else if (const auto* d = std::get_if<Decision>(&n)) {
      out << "D " << d->var << ' ' << line_of[d->lo.value] << ' ' << line_of[d->hi.value] << ' '
          << format_probability(d->p0) << ' ' << format_probability(d->p1) << ' ' << d->f0 << ' ' << d->f1 << '\n';
    } else if (const auto* a = std::get_if<Decomposition>(&n)) {
      out << "A " << a->children.size();
      for (NodeId ch : a->children) out << ' ' << line_of[ch.value];
      out << '\n';
    }
  }
  out << line_of[dag.root().value] << '\n';
}

std::string dag_to_string(const Dag& dag) {
  std::ostringstream out;
  write_dag(out, dag);
  return out.str();
}

namespace {

template <class T>
T parse_number(const std::string& token, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw DagFormatError(line, std::string("bad ") + what + " '" + token + "'");
  return value;
}

double parse_probability(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) throw DagFormatError(line, "bad probability '" + token + "'");
  return value;
}

}  // namespace

Dag parse_dag(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line(text)) throw DagFormatError(line_no, "empty input");
  std::istringstream header(text);
  std::string magic, universe_tok, count_tok, extra;
  header >> magic >> universe_tok >> count_tok;
  if (magic != "pddnnf" || universe_tok.empty() || count_tok.empty() || (header >> extra))
    throw DagFormatError(line_no, "expected header 'pddnnf <universe> <node_count>'");
  auto universe = parse_number<std::uint32_t>(universe_tok, line_no, "universe");
  auto count = parse_number<std::uint32_t>(count_tok, line_no, "node count");

  Dag dag(universe);
  std::vector<NodeId> ids;
  ids.reserve(count);
  auto ref = [&](const std::string& token) {
    auto idx = parse_number<std::uint32_t>(token, line_no, "node id");
    if (idx >= ids.size()) throw DagFormatError(line_no, "dangling or forward node id " + token);
    return ids[idx];
  };

  for (std::uint32_t i = 0; i < count; ++i) {
    if (!next_line(text)) throw DagFormatError(line_no, "expected " + std::to_string(count) + " node lines");
    std::istringstream tokens(text);
    std::string kind;
    tokens >> kind;
    std::vector<std::string> args;
    for (std::string t; tokens >> t;) args.push_back(t);
    auto expect_args = [&](std::size_t n) {
      if (args.size() != n) throw DagFormatError(line_no, "'" + kind + "' takes " + std::to_string(n) + " fields");
    };
    if (kind == "F") {
      expect_args(0);
      ids.push_back(dag.false_leaf());
    } else if (kind == "T") {
      expect_args(0);
      ids.push_back(dag.true_leaf());
    } else if (kind == "?") {
      expect_args(0);
      ids.push_back(dag.add_unknown());
    } else if (kind == "K") {
      expect_args(2);
      ExtReal c;
      try {
        c = ExtReal::from_decimal(args[0]);
      } catch (const std::exception&) {
        throw DagFormatError(line_no, "bad count '" + args[0] + "'");
      }
      ids.push_back(dag.add_known(c, parse_number<std::uint32_t>(args[1], line_no, "var count")));
    } else if (kind == "L") {
      expect_args(1);
      int lit = parse_number<int>(args[0], line_no, "literal");
      if (lit == 0) throw DagFormatError(line_no, "literal 0");
      ids.push_back(dag.add_literal(Literal::from_dimacs(lit)));
    } else if (kind == "D") {
      expect_args(7);
      Decision d;
      d.var = parse_number<std::uint32_t>(args[0], line_no, "variable");
      d.lo = ref(args[1]);
      d.hi = ref(args[2]);
      d.p0 = parse_probability(args[3], line_no);
      d.p1 = parse_probability(args[4], line_no);
      d.f0 = parse_number<std::uint64_t>(args[5], line_no, "frequency");
      d.f1 = parse_number<std::uint64_t>(args[6], line_no, "frequency");
      ids.push_back(dag.add_decision(d));
    } else if (kind == "A") {
      if (args.empty()) throw DagFormatError(line_no, "'A' needs a child count");
      auto k = parse_number<std::uint32_t>(args[0], line_no, "child count");
      if (args.size() != k + 1) throw DagFormatError(line_no, "'A' child count does not match ids");
      std::vector<NodeId> kids;
      for (std::uint32_t j = 1; j <= k; ++j) kids.push_back(ref(args[j]));
      ids.push_back(dag.add_decomposition(std::move(kids)));
    } else {
      throw DagFormatError(line_no, "unknown node kind '" + kind + "'");
    }
  }
  if (!next_line(text)) throw DagFormatError(line_no, "missing root id line");
  {
    std::istringstream tokens(text);
    std::string root_tok;
    tokens >> root_tok;
    if (tokens >> extra) throw DagFormatError(line_no, "root line has extra fields");
    dag.set_root(ref(root_tok));
  }
  if (next_line(text)) throw DagFormatError(line_no, "trailing content after root id");

  auto issues = validate(dag);
  if (!issues.empty()) throw DagFormatError(line_no, "invariant violation: " + issues.front());
  return dag;
}

Dag parse_dag(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dag(in);
}

}  // namespace pkc
