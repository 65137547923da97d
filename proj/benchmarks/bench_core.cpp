#include <benchmark/benchmark.h>

#include <random>

#include "msstr/problems.hpp"
#include "msstr/qn_models.hpp"
#include "msstr/subproblems.hpp"
#include "msstr/trustregion.hpp"

namespace {

using namespace msstr;

PairBuffer filled_buffer(int n, int m, unsigned seed = 7) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  PairBuffer buf(n, m);
  for (int k = 0; k < m; ++k) {
    Vec s(n), y(n);
    for (int i = 0; i < n; ++i) {
      s(i) = nd(rng);
      y(i) = nd(rng);
    }
    buf.update(s, y);
  }
  return buf;
}

void BM_MssApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PairBuffer buf = filled_buffer(n, 5);
  auto model = build_mss(buf, dense_init(buf, 7));
  Vec v = Vec::Ones(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.apply(v));
  }
}
BENCHMARK(BM_MssApply)->Arg(1000)->Arg(10000);

void BM_Factorize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PairBuffer buf = filled_buffer(n, 5);
  auto model = build_mss(buf, dense_init(buf, 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(factorize(model));
  }
}
BENCHMARK(BM_Factorize)->Arg(1000)->Arg(10000);

void BM_SolveScInf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PairBuffer buf = filled_buffer(n, 5);
  auto factors = factorize(build_mss(buf, dense_init(buf, 7)));
  std::mt19937 rng(13);
  std::normal_distribution<double> nd;
  Vec g(n);
  for (int i = 0; i < n; ++i) g(i) = nd(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_sc_inf(factors, g, 1.0));
  }
}
BENCHMARK(BM_SolveScInf)->Arg(1000)->Arg(10000);

void BM_Minimize(benchmark::State& state) {
  Problem p = make_problem("DIXMAANE", static_cast<int>(state.range(0)));
  SolverConfig cfg = SolverConfig::mss_defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize(p, p.x0, cfg));
  }
}
BENCHMARK(BM_Minimize)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
