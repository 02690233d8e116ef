#include <benchmark/benchmark.h>

#include "sphere7/fock_rep.hpp"

using namespace sphere7;

static void BM_BuildRho(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fock::build_rho(m));
  state.counters["dim"] = fock::dim(m);
}
BENCHMARK(BM_BuildRho)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMicrosecond);

static void BM_BuildRhoPartial(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fock::build_rho_partial(m, 16));
}
BENCHMARK(BM_BuildRhoPartial)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMicrosecond);

static void BM_VerifyBrackets(benchmark::State& state) {
  const auto r = fock::build_rho(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fock::verify_brackets(r));
}
BENCHMARK(BM_VerifyBrackets)->RangeMultiplier(2)->Range(2, 8)->Unit(benchmark::kMillisecond);

static void BM_CommutantDimension(benchmark::State& state) {
  const auto r = fock::build_rho(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fock::commutant_dimension(r));
}
BENCHMARK(BM_CommutantDimension)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
