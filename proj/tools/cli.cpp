#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "pkc/compiler.hpp"
#include "pkc/counting.hpp"
#include "pkc/dag_io.hpp"
#include "pkc/dag_ops.hpp"
#include "pkc/dimacs.hpp"
#include "pkc/estimator.hpp"

namespace pkc::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string output;
  std::uint64_t samples = 0;
  double time_seconds = 0.0;
  double delta = 0.99;
  double c = 1.9307;
  std::uint32_t runs = 0;
  std::optional<std::uint64_t> seed;
  std::uint32_t trivial_limit = 12;
  std::uint32_t probe_width = 8;
  std::uint32_t probe_budget = 4096;
  std::string heuristic = "maxocc";
  bool no_cache = false;
  std::string format = "text";
  bool replay = false;
  bool timing = false;
};

// Usage problems detected after CLI11 has accepted the arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("PKC_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0') throw UsageError(std::string("PKC_SEED is not an unsigned integer: ") + env);
  return v;
}

std::string fmt_real(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

ordered_json number_json(const ExtReal& v) {
  return {{"decimal", v.to_decimal()}, {"mantissa", v.mantissa()}, {"exp2", v.exp2()}};
}

// Exact integers below 2^53 print in full, anything else in E notation.
std::string exact_text(const ExtReal& v) {
  if (v < ExtReal::pow2(53)) {
    std::ostringstream os;
    os << static_cast<std::uint64_t>(v.to_double());
    return os.str();
  }
  return v.to_decimal();
}

struct Context {
  const Options& opt;
  std::ostream& out;
  std::ostream& err;
  const std::atomic<bool>* stop;

  bool json() const { return opt.format == "json"; }
};

Cnf load_formula(const Context& ctx) {
  std::ifstream in(ctx.opt.input);
  if (!in) throw UsageError("cannot open " + ctx.opt.input);
  std::vector<std::string> warnings;
  Cnf formula = parse_dimacs(in, &warnings);
  for (const auto& w : warnings) ctx.err << "warning: " << w << '\n';
  return formula;
}

CompilerConfig make_config(const Options& opt) {
  CompilerConfig cfg;
  cfg.trivial_var_limit = opt.trivial_limit;
  cfg.probe.probe_width = opt.probe_width;
  cfg.probe.node_budget = opt.probe_budget;
  cfg.variable_heuristic = opt.heuristic == "minindex" ? VariableHeuristic::kMinIndex : VariableHeuristic::kMaxOccurrence;
  cfg.cache_enabled = !opt.no_cache;
  cfg.rng_seed = opt.seed ? *opt.seed : default_seed();
  if (opt.replay) {
    cfg.variable_heuristic = VariableHeuristic::kMinIndex;
    cfg.trivial_var_limit = 1;
    cfg.cache_enabled = true;
  }
  return cfg;
}

RunBudget make_budget(const Options& opt) {
  if (opt.samples > 0 && opt.time_seconds > 0.0) throw UsageError("--n and --time are mutually exclusive");
  RunBudget budget;
  if (opt.time_seconds > 0.0) {
    budget.time = std::chrono::milliseconds(static_cast<std::int64_t>(std::ceil(opt.time_seconds * 1000.0)));
  } else {
    budget.samples = opt.samples > 0 ? opt.samples : (opt.replay ? 2 : 1000);
  }
  return budget;
}

ordered_json estimate_json(const EstimateReport& r, bool timing) {
  ordered_json j;
  j["estimate"] = number_json(r.estimate);
  j["unsat"] = r.unsat;
  j["interrupted"] = r.interrupted;
  j["seed"] = r.seed;
  j["variables"] = r.variables;
  j["samples"] = r.samples;
  j["edges"] = r.edges;
  j["micro_kc_calls"] = r.counters.micro_kc_calls;
  j["decision_samples"] = r.counters.decision_samples;
  j["probe_calls"] = r.counters.probe_calls;
  j["guard_repairs"] = r.counters.guard_repairs;
  j["cache"] = {{"hits", r.cache.hits},
                {"misses", r.cache.misses},
                {"replacements", r.cache.replacements},
                {"size", r.cache.size}};
  if (timing) j["elapsed_seconds"] = std::chrono::duration<double>(r.elapsed).count();
  return j;
}

void estimate_text(std::ostream& out, const EstimateReport& r, bool timing) {
  out << "estimate: " << r.estimate.to_decimal() << '\n'
      << "samples: " << r.samples << '\n'
      << "micro_kc_calls: " << r.counters.micro_kc_calls << '\n'
      << "edges: " << r.edges << '\n'
      << "seed: " << r.seed << '\n'
      << "cache: hits " << r.cache.hits << " misses " << r.cache.misses << " size " << r.cache.size << '\n';
  if (timing) out << "elapsed_seconds: " << std::chrono::duration<double>(r.elapsed).count() << '\n';
}

int report_unsat(const Context& ctx, const std::string& command) {
  if (ctx.json()) {
    ordered_json j{{"command", command}, {"unsat", true}, {"models", "0"}};
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << "UNSAT, models = 0\n";
  }
  return kOk;
}

// Session for estimate/compile: scripted replay or the configured sampler.
CompileSession make_session(const Cnf& formula, const Options& opt) {
  CompilerConfig cfg = make_config(opt);
  if (!opt.replay) return CompileSession(formula, cfg);
  return CompileSession(formula, cfg, std::make_unique<ScriptedBranchSampler>(std::vector<bool>{0, 0, 1, 1, 1}),
                        std::make_unique<ScriptedMarginalEstimator>(std::vector<double>{0.2, 0.5, 0.6}));
}

int cmd_exact(const Context& ctx) {
  Cnf formula = load_formula(ctx);
  ExtReal count = exact_count(formula, formula.num_vars());
  if (ctx.json()) {
    ordered_json j{{"command", "exact"}, {"variables", formula.num_vars()}, {"models", exact_text(count)},
                   {"count", number_json(count)}};
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << "models: " << exact_text(count) << '\n';
  }
  return kOk;
}

int cmd_estimate(const Context& ctx) {
  Cnf formula = load_formula(ctx);
  RunBudget budget = make_budget(ctx.opt);
  if (!is_satisfiable(formula)) return report_unsat(ctx, "estimate");
  CompileSession session = make_session(formula, ctx.opt);
  EstimateReport r = drive_session(session, budget, ctx.stop);
  if (ctx.json()) {
    ordered_json j{{"command", "estimate"}};
    j.update(estimate_json(r, ctx.opt.timing));
    ctx.out << j.dump(2) << '\n';
  } else {
    estimate_text(ctx.out, r, ctx.opt.timing);
  }
  return r.interrupted ? kInterrupted : kOk;
}

int cmd_compile(const Context& ctx) {
  if (ctx.opt.output.empty()) throw UsageError("compile needs -o <file>");
  Cnf formula = load_formula(ctx);
  RunBudget budget = make_budget(ctx.opt);
  std::ofstream file(ctx.opt.output);
  if (!file) throw UsageError("cannot write " + ctx.opt.output);
  if (!is_satisfiable(formula)) {
    Dag dag(formula.num_vars());
    dag.set_root(dag.false_leaf());
    write_dag(file, dag);
    return report_unsat(ctx, "compile");
  }
  CompileSession session = make_session(formula, ctx.opt);
  EstimateReport r = drive_session(session, budget, ctx.stop);
  write_dag(file, session.dag());
  ExtReal lower = bound(session.dag(), session.root(), BoundMode::kLower);
  ExtReal upper = bound(session.dag(), session.root(), BoundMode::kUpper);
  if (ctx.json()) {
    ordered_json j{{"command", "compile"}, {"output", ctx.opt.output}};
    j.update(estimate_json(r, ctx.opt.timing));
    j["lower_bound"] = number_json(lower);
    j["upper_bound"] = number_json(upper);
    ctx.out << j.dump(2) << '\n';
  } else {
    estimate_text(ctx.out, r, ctx.opt.timing);
    ctx.out << "bounds: lower " << lower.to_decimal() << " upper " << upper.to_decimal() << '\n'
            << "dag: " << ctx.opt.output << '\n';
  }
  return r.interrupted ? kInterrupted : kOk;
}

int cmd_count(const Context& ctx) {
  if (ctx.opt.replay) throw UsageError("--replay-example applies to estimate and compile only");
  Cnf formula = load_formula(ctx);
  RunBudget budget = make_budget(ctx.opt);
  CompilerConfig cfg = make_config(ctx.opt);
  BoundReport r = bounded_count(formula, ctx.opt.delta, ctx.opt.c, budget, cfg, ctx.opt.runs, ctx.stop);
  if (r.unsat) return report_unsat(ctx, "count");
  std::uint64_t total_samples = 0;
  for (const auto& run : r.per_run) total_samples += run.samples;
  if (ctx.json()) {
    ordered_json j{{"command", "count"},
                   {"lower_bound", number_json(r.lower_bound)},
                   {"confidence", r.confidence},
                   {"c", r.c},
                   {"runs", r.runs},
                   {"completed_runs", r.per_run.size()},
                   {"interrupted", r.interrupted},
                   {"seed", cfg.rng_seed},
                   {"total_samples", total_samples}};
    ordered_json runs = ordered_json::array();
    for (const auto& run : r.per_run) runs.push_back(estimate_json(run, ctx.opt.timing));
    j["per_run"] = std::move(runs);
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << "lower_bound: " << r.lower_bound.to_decimal() << '\n'
            << "confidence: " << fmt_real(r.confidence) << '\n'
            << "c: " << fmt_real(r.c) << '\n'
            << "runs: " << r.runs << '\n'
            << "seed: " << cfg.rng_seed << '\n';
    for (std::size_t i = 0; i < r.per_run.size(); ++i) {
      const auto& run = r.per_run[i];
      ctx.out << "run " << i << ": estimate " << run.estimate.to_decimal() << " samples " << run.samples
              << " micro_kc_calls " << run.counters.micro_kc_calls << " edges " << run.edges << " seed " << run.seed;
      if (ctx.opt.timing) ctx.out << " elapsed " << std::chrono::duration<double>(run.elapsed).count();
      ctx.out << '\n';
    }
    ctx.out << "total_samples: " << total_samples << '\n';
    if (r.interrupted) ctx.out << "interrupted: partial report\n";
  }
  return r.interrupted ? kInterrupted : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const std::atomic<bool>* stop) {
  Options opt;
  CLI::App app{"Approximate model counting by partial knowledge compilation", "pkc"};
  app.require_subcommand(1);

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("file", opt.input, "DIMACS CNF input")->required();
  };
  auto add_compile_flags = [&](CLI::App* sub) {
    sub->add_option("--n", opt.samples, "MicroKC calls per run");
    sub->add_option("--time", opt.time_seconds, "Wall-time budget per run in seconds");
    sub->add_option("--seed", opt.seed, "Master seed (default: $PKC_SEED, else 0)");
    sub->add_option("--trivial-limit", opt.trivial_limit, "Variable count up to which formulas are counted exactly")
        ->check(CLI::Range(1u, kDefaultOracleLimit));
    sub->add_option("--probe-width", opt.probe_width, "Variables per marginal probe")->check(CLI::PositiveNumber);
    sub->add_option("--probe-budget", opt.probe_budget, "Node budget per marginal probe")->check(CLI::PositiveNumber);
    sub->add_option("--heuristic", opt.heuristic, "Branching variable choice")
        ->check(CLI::IsMember({"maxocc", "minindex"}));
    sub->add_flag("--no-cache", opt.no_cache, "Disable the component cache (single-sample mode)");
    sub->add_flag("--timing", opt.timing, "Include wall-clock times in reports");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* count = app.add_subcommand("count", "Lower bound holding with the requested confidence");
  add_input(count);
  add_compile_flags(count);
  add_format(count);
  count->add_option("--delta", opt.delta, "Confidence in (0, 1)")->check(CLI::Range(0.0, 1.0));
  count->add_option("--c", opt.c, "Markov constant (> 1)");
  count->add_option("--m", opt.runs, "Number of runs (overrides --delta)");

  auto* estimate = app.add_subcommand("estimate", "Single unbiased estimate");
  add_input(estimate);
  add_compile_flags(estimate);
  add_format(estimate);
  estimate->add_flag("--replay-example", opt.replay, "Scripted branch draws and marginals (worked example)");

  auto* exact = app.add_subcommand("exact", "Exact model count (small formulas)");
  add_input(exact);
  add_format(exact);

  auto* compile = app.add_subcommand("compile", "Write the partial compilation and its bounds");
  add_input(compile);
  add_compile_flags(compile);
  add_format(compile);
  compile->add_option("-o,--output", opt.output, "DAG output file")->required();
  compile->add_flag("--replay-example", opt.replay, "Scripted branch draws and marginals (worked example)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  Context ctx{opt, out, err, stop};
  try {
    if (count->parsed()) {
      if (!(opt.c > 1.0)) throw UsageError("--c must exceed 1");
      if (opt.runs == 0 && !(opt.delta > 0.0 && opt.delta < 1.0)) throw UsageError("--delta must be in (0, 1)");
      return cmd_count(ctx);
    }
    if (estimate->parsed()) return cmd_estimate(ctx);
    if (exact->parsed()) return cmd_exact(ctx);
    return cmd_compile(ctx);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DimacsError& e) {
    err << "error: " << opt.input << ": " << e.what() << '\n';
    return kUsageError;
  } catch (const OracleLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kOracleLimit;
  } catch (const ScriptExhausted& e) {
    err << "error: " << e.what() << " (the replay script covers --n 2 on the worked example)\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace pkc::cli
