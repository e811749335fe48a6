// Serial vs OpenMP brute-force placement oracle.
//
//   ./build/bench_oracle --benchmark_counters_tabular=true

#include <random>

#include <benchmark/benchmark.h>

#include "draps/oracle.hpp"

namespace {

draps::StaticInstance make_instance(std::size_t containers, std::size_t workers) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> mem(0.2, 3.0), cpu(0.05, 1.5), io(1e6, 4e7);
  draps::StaticInstance inst;
  const double caps[][2] = {{4.0, 1.0}, {8.0, 4.0}, {16.0, 8.0}, {8.0, 2.0}};
  for (std::size_t w = 0; w < workers; ++w) {
    inst.workers.push_back({caps[w % 4][0] * draps::kGiB, caps[w % 4][1], 1.25e8, 2e8});
  }
  for (std::size_t c = 0; c < containers; ++c) {
    inst.containers.push_back({mem(rng) * draps::kGiB, cpu(rng), io(rng), io(rng)});
  }
  return inst;
}

void BM_OracleSerial(benchmark::State& state) {
  auto inst = make_instance(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) {
    auto r = draps::brute_force_optimal_nu_serial(inst);
    benchmark::DoNotOptimize(r.nu);
    state.counters["assignments"] = static_cast<double>(r.evaluated);
  }
}

void BM_OracleParallel(benchmark::State& state) {
  auto inst = make_instance(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) {
    auto r = draps::brute_force_optimal_nu(inst);
    benchmark::DoNotOptimize(r.nu);
    state.counters["assignments"] = static_cast<double>(r.evaluated);
  }
}

}  // namespace

BENCHMARK(BM_OracleSerial)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleParallel)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
