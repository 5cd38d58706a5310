#include <benchmark/benchmark.h>

#include "svfie/svfie.hpp"

using namespace svfie;

static void BM_WalshMatrix(benchmark::State& state) {
  const Resolution res(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(walsh_matrix(res));
}
BENCHMARK(BM_WalshMatrix)->RangeMultiplier(4)->Range(8, 512);

static void BM_Discretize(benchmark::State& state) {
  const auto& p = registry_get("example2");
  const Resolution res(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(discretize(p, res));
}
BENCHMARK(BM_Discretize)->RangeMultiplier(4)->Range(8, 128);

// Per-path cost once the deterministic blocks are cached.
static void BM_SolvePath(benchmark::State& state) {
  const Resolution res(static_cast<std::size_t>(state.range(0)));
  const auto disc = discretize(registry_get("example2"), res);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto path = brownian_path(seed++, res);
    benchmark::DoNotOptimize(solve_path(disc, path, Method::Walsh));
  }
}
BENCHMARK(BM_SolvePath)->RangeMultiplier(4)->Range(8, 512);

static void BM_MonteCarlo(benchmark::State& state) {
  const auto& p = registry_get("example2");
  const Resolution res(64);
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo(p, res, static_cast<std::size_t>(state.range(0)), SeedPlan{1}));
}
BENCHMARK(BM_MonteCarlo)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
