#include "pkc/compiler.hpp"

#include <stdexcept>

#include "pkc/counting.hpp"
#include "pkc/dag_ops.hpp"
#include "pkc/simplify.hpp"

namespace pkc {

namespace {

void check_config(const CompilerConfig& config) {
  if (config.trivial_var_limit < 1 || config.trivial_var_limit > kDefaultOracleLimit)
    throw std::invalid_argument("trivial_var_limit must be in 1.." + std::to_string(kDefaultOracleLimit));
  if (config.probe.probe_width < 1) throw std::invalid_argument("probe_width must be positive");
  if (config.probe.node_budget < 1) throw std::invalid_argument("probe node budget must be positive");
}

Cnf with_unit(const Cnf& formula, Literal unit) {
  std::vector<std::vector<Literal>> clauses;
  clauses.reserve(formula.num_clauses() + 1);
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    auto c = formula.clause(i);
    clauses.emplace_back(c.begin(), c.end());
  }
  clauses.push_back({unit});
  return Cnf(formula.num_vars(), clauses);
}

}  // namespace

CompileSession::CompileSession(const Cnf& formula, CompilerConfig config)
    : CompileSession(formula, config, std::make_unique<RandomBranchSampler>(config.rng_seed),
                     std::make_unique<ProbeMarginalEstimator>(config.probe)) {}

CompileSession::CompileSession(const Cnf& formula, CompilerConfig config, std::unique_ptr<BranchSampler> sampler,
                               std::unique_ptr<MarginalEstimator> marginals)
    : formula_(formula.canonical()),
      config_(config),
      dag_(formula.num_vars()),
      sampler_(std::move(sampler)),
      marginals_(std::move(marginals)) {
  check_config(config_);
}

CompileSession::CompileSession(CompileSession&&) noexcept = default;
CompileSession& CompileSession::operator=(CompileSession&&) noexcept = default;
CompileSession::~CompileSession() = default;

NodeId CompileSession::sample() {
  if (!config_.cache_enabled) dag_ = Dag(formula_.num_vars());
  ++counters_.samples;
  NodeId r = micro_kc(formula_);
  dag_.set_root(r);
  if (!config_.cache_enabled) sample_sum_ += unbiased_estimate(dag_, r);
  return r;
}

NodeId CompileSession::micro_kc(const Cnf& input) {
  ++counters_.micro_kc_calls;
  Cnf phi = input.canonical();
  if (phi.is_true()) return dag_.true_leaf();

  ComponentKey key;
  if (config_.cache_enabled) {
    key = component_key(phi);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      ++stats_.hits;
      return revisit(phi, it->second);
    }
    ++stats_.misses;
  }

  Entry entry;
  entry.node = create(phi, entry);
  NodeId node = entry.node;
  if (config_.cache_enabled) {
    auto [it, inserted] = cache_.insert_or_assign(std::move(key), std::move(entry));
    if (!inserted) ++stats_.replacements;
    stats_.size = cache_.size();
  }
  return node;
}

NodeId CompileSession::create(const Cnf& phi, Entry& entry) {
  if (auto lit = phi.as_literal()) return dag_.add_literal(*lit);
  const auto nvars = static_cast<std::uint32_t>(phi.vars().size());
  if (nvars <= config_.trivial_var_limit) {
    auto count = count_models_over_own_vars(phi, config_.trivial_var_limit);
    return dag_.add_known(ExtReal::from_double(static_cast<double>(count)), nvars);
  }

  Cnf current = phi;
  for (;;) {
    auto comps = decompose_components(current);
    if (!comps) throw std::logic_error("MicroKC reached an unsatisfiable sub-formula");
    if (comps->size() > 1) {
      entry.parts = std::move(*comps);
      return conjoin(entry.parts, std::nullopt);
    }
    if (!(comps->front() == phi)) {
      // Propagation or a guard repair changed the formula; compile the
      // equivalent residual and answer for it.
      entry.parts = std::move(*comps);
      return micro_kc(entry.parts.front());
    }

    Var x = choose_var(phi);
    std::optional<Cnf> branch[2];
    bool sat[2];
    for (bool b : {false, true}) {
      Literal l(x, b);
      branch[b] = condition(phi, std::span<const Literal>(&l, 1));
      sat[b] = branch[b] && is_satisfiable(*branch[b]);
    }
    if (!sat[0] && !sat[1]) throw std::logic_error("MicroKC reached an unsatisfiable sub-formula");
    if (!sat[0] || !sat[1]) {
      // x is implied but probing missed it; adjoin it and decompose again.
      ++counters_.guard_repairs;
      current = with_unit(phi, Literal(x, sat[1]));
      continue;
    }

    double p1 = marginals_->estimate(phi, x);
    ++counters_.probe_calls;
    if (!(p1 > 0.0 && p1 < 1.0)) throw std::logic_error("marginal estimate outside (0, 1)");
    bool b = sampler_->sample(p1);
    ++counters_.decision_samples;
    NodeId child = micro_kc(*branch[b]);
    Decision d;
    d.var = x;
    d.p0 = 1.0 - p1;
    d.p1 = p1;
    d.child(b) = child;
    d.child(!b) = dag_.add_unknown();
    d.f(b) = 1;
    return dag_.add_decision(d);
  }
}

NodeId CompileSession::revisit(const Cnf& phi, const Entry& entry) {
  if (!entry.parts.empty()) {
    if (dag_.holds<Decomposition>(entry.node)) return conjoin(entry.parts, entry.node);
    return micro_kc(entry.parts.front());
  }
  if (!dag_.holds<Decision>(entry.node) || dag_.literal_of(entry.node)) return entry.node;

  const Decision& d = dag_.decision(entry.node);
  Var x = d.var;
  bool b = sampler_->sample(d.p1);
  ++counters_.decision_samples;
  ++dag_.decision(entry.node).f(b);
  Literal l(x, b);
  auto sub = condition(phi, std::span<const Literal>(&l, 1));
  if (!sub) throw std::logic_error("MicroKC sampled a refuted branch");
  NodeId child = micro_kc(*sub);
  dag_.decision(entry.node).child(b) = child;
  return entry.node;
}

NodeId CompileSession::conjoin(const std::vector<Cnf>& parts, std::optional<NodeId> reuse) {
  std::vector<NodeId> kids;
  for (const Cnf& part : parts) {
    NodeId r = micro_kc(part);
    if (const auto* a = std::get_if<Decomposition>(&dag_.node(r))) {
      kids.insert(kids.end(), a->children.begin(), a->children.end());
    } else {
      kids.push_back(r);
    }
  }
  if (reuse) {
    std::get<Decomposition>(dag_.node(*reuse)).children = std::move(kids);
    return *reuse;
  }
  return dag_.add_decomposition(std::move(kids));
}

Var CompileSession::choose_var(const Cnf& phi) const {
  if (config_.variable_heuristic == VariableHeuristic::kMinIndex) return phi.vars().front();
  std::vector<std::uint32_t> occurrences(phi.num_vars() + 1, 0);
  for (std::size_t i = 0; i < phi.num_clauses(); ++i)
    for (Literal l : phi.clause(i)) ++occurrences[l.var()];
  Var best = phi.vars().front();
  for (Var v : phi.vars())
    if (occurrences[v] > occurrences[best]) best = v;
  return best;
}

ExtReal CompileSession::estimate() const {
  if (counters_.samples == 0) throw std::logic_error("estimate requested before any sample");
  if (config_.cache_enabled) return unbiased_estimate(dag_, dag_.root());
  return sample_sum_.scaled(1.0 / static_cast<double>(counters_.samples));
}

CompileSession partial_kc(const Cnf& formula, std::uint64_t samples, const CompilerConfig& config) {
  if (samples == 0) throw std::invalid_argument("partial_kc: N must be positive");
  if (!is_satisfiable(formula)) throw std::invalid_argument("partial_kc: formula is unsatisfiable");
  CompileSession session(formula, config);
  for (std::uint64_t i = 0; i < samples; ++i) session.sample();
  return session;
}

}  // namespace pkc
