#include <benchmark/benchmark.h>

#include "nlac/nonlocal.hpp"
#include "nlac/reduction.hpp"
#include "nlac/solver.hpp"

namespace {

using namespace nlac;

void BM_OperatorWeights(benchmark::State& state) {
  const auto K = make_fractional(1, 0.5, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    OperatorWeights w(K, 0.05, n);
    benchmark::DoNotOptimize(w.tail(1));
  }
}
BENCHMARK(BM_OperatorWeights)->Arg(1001)->Arg(4001);

void BM_ApplyOperatorAll(benchmark::State& state) {
  const auto K = make_fractional(1, 0.5, 1.0);
  const double M = static_cast<double>(state.range(0));
  const auto p = make_tanh_init(M, 0.05);
  const OperatorWeights w(K, 0.05, p.size());
  for (auto _ : state) benchmark::DoNotOptimize(apply_operator_all(w, p));
  state.SetComplexityN(static_cast<std::int64_t>(p.size()));
}
BENCHMARK(BM_ApplyOperatorAll)->Arg(10)->Arg(25)->Arg(50)->Complexity();

void BM_Energy(benchmark::State& state) {
  const auto K = make_fractional(1, 0.5, 1.0);
  const double M = static_cast<double>(state.range(0));
  const auto p = make_tanh_init(M, 0.05);
  const OperatorWeights w(K, 0.05, p.size());
  const auto W = quartic();
  for (auto _ : state) benchmark::DoNotOptimize(energy(w, W, p, {-M, M}).total);
}
BENCHMARK(BM_Energy)->Arg(10)->Arg(50);

void BM_SolveDirichlet(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0)) / 100.0;
  const auto K = make_fractional(1, s, 1.0);
  for (auto _ : state) {
    const auto r = solve_dirichlet(K, quartic(), 20.0, 0.05);
    state.counters["iterations"] = r.iterations;
  }
}
BENCHMARK(BM_SolveDirichlet)->Arg(25)->Arg(50)->Arg(75)->Unit(benchmark::kMillisecond);

void BM_VerifyIdentity(benchmark::State& state) {
  const auto K = make_fractional(2, 0.5, 1.0);
  const auto u0 = make_tanh_init(50.0, 0.05);
  const std::vector<std::vector<double>> points{{0.0, 1.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_identity(K, u0, points, state.range(0), 1).max_defect);
  }
}
BENCHMARK(BM_VerifyIdentity)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
