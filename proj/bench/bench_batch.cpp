// Serial reference runner against the OpenMP batch runner on the same jobs.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "evsim/harness/batch_runner.hpp"

using namespace evsim::harness;

namespace {

RunConfig bench_config(int episodes) {
  return parse_run_config(R"({
    "env": "markets-execution-v0",
    "env_config": {"PARENT_ORDER_SIZE": 2000, "TIME_WINDOW": {"minutes": 30}},
    "population": {"noise_count": 50, "value_count": 5, "momentum_count": 2},
    "seeds": [1, 2],
    "episodes": )" + std::to_string(episodes) + R"(,
    "policy": {"type": "random"}
  })");
}

void BM_BatchSerial(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_serial(config, false));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}

void BM_BatchParallel(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_parallel(config, false));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_DailyEpisode(benchmark::State& state) {
  auto config = parse_run_config(R"({"env": "markets-daily_investor-v0", "seeds": [1]})");
  int episode = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_single(config, 1, episode++, false));
}

}  // namespace

BENCHMARK(BM_BatchSerial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchParallel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DailyEpisode)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
