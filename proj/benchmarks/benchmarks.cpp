#include <benchmark/benchmark.h>

#include <random>

#include "pkc/compiler.hpp"
#include "pkc/counting.hpp"
#include "pkc/dag_ops.hpp"
#include "pkc/marginal.hpp"
#include "pkc/simplify.hpp"

namespace {

using namespace pkc;

Cnf random_3cnf(std::uint32_t vars, std::uint32_t clauses, std::uint64_t seed) {
  for (;; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(1, static_cast<int>(vars));
    std::vector<std::vector<int>> out;
    for (std::uint32_t i = 0; i < clauses; ++i) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      if (a == b || b == c || a == c) {
        --i;
        continue;
      }
      out.push_back({rng() & 1 ? a : -a, rng() & 1 ? b : -b, rng() & 1 ? c : -c});
    }
    Cnf f = Cnf::from_dimacs(vars, out);
    if (is_satisfiable(f)) return f;
  }
}

void BM_ExactCount(benchmark::State& state) {
  Cnf f = random_3cnf(static_cast<std::uint32_t>(state.range(0)), static_cast<std::uint32_t>(state.range(0) * 3), 1);
  for (auto _ : state) benchmark::DoNotOptimize(count_models_over_own_vars(f));
}
BENCHMARK(BM_ExactCount)->Arg(16)->Arg(20)->Arg(24);

void BM_FailedLiteralProbing(benchmark::State& state) {
  Cnf f = random_3cnf(static_cast<std::uint32_t>(state.range(0)), static_cast<std::uint32_t>(state.range(0) * 4), 2);
  for (auto _ : state) benchmark::DoNotOptimize(implied_literals_ibcp(f));
}
BENCHMARK(BM_FailedLiteralProbing)->Arg(50)->Arg(200);

void BM_ProbeMarginal(benchmark::State& state) {
  Cnf f = random_3cnf(40, 150, 3);
  ProbeConfig cfg;
  cfg.probe_width = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_marginal(f, f.vars().front(), cfg));
}
BENCHMARK(BM_ProbeMarginal)->Arg(2)->Arg(8)->Arg(12);

void BM_MicroKcCalls(benchmark::State& state) {
  Cnf f = random_3cnf(40, 150, 4);
  CompilerConfig cfg;
  cfg.cache_enabled = state.range(0) != 0;
  CompileSession session(f, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(session.sample());
  state.counters["edges"] = static_cast<double>(edge_count(session.dag()));
}
BENCHMARK(BM_MicroKcCalls)->Arg(1)->Arg(0)->Unit(benchmark::kMicrosecond);

void BM_UnbiasedEstimate(benchmark::State& state) {
  Cnf f = random_3cnf(40, 150, 5);
  CompilerConfig cfg;
  CompileSession session = partial_kc(f, 2000, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(session.estimate());
}
BENCHMARK(BM_UnbiasedEstimate)->Unit(benchmark::kMicrosecond);

void BM_ExtRealProduct(benchmark::State& state) {
  std::vector<ExtReal> xs;
  for (int i = 1; i <= 1024; ++i) xs.push_back(ExtReal::from_double(i * 1.5));
  for (auto _ : state) {
    ExtReal p = ExtReal::from_double(1);
    for (const auto& x : xs) p *= x;
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_ExtRealProduct);

}  // namespace
BENCHMARK_MAIN();
