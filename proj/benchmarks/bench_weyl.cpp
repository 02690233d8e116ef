#include <benchmark/benchmark.h>

#include "sphere7/embedding.hpp"
#include "sphere7/weyl.hpp"

using namespace sphere7;

static void BM_WeylCommutatorOfEmbeddedGenerators(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  const auto q = weyl::embedded_generators(ell);
  const auto& a = q[lie::gen::Ppp];
  const auto& b = q[lie::gen::Kpp];
  for (auto _ : state) benchmark::DoNotOptimize(weyl::LaurentElement::commutator(a, b, weyl::default_grade_cap(ell)));
}
BENCHMARK(BM_WeylCommutatorOfEmbeddedGenerators)->DenseRange(0, 4, 2)->Unit(benchmark::kMillisecond);

static void BM_SqrtPartialSum(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weyl::sqrt_partial_sum(ell));
}
BENCHMARK(BM_SqrtPartialSum)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMicrosecond);

static void BM_EmbeddedGenerators(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weyl::embedded_generators(ell));
}
BENCHMARK(BM_EmbeddedGenerators)->DenseRange(0, 6, 2)->Unit(benchmark::kMillisecond);

static void BM_VerifyEmbedding(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weyl::verify_embedding(ell, 16, 1));
}
BENCHMARK(BM_VerifyEmbedding)->DenseRange(0, 4, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
