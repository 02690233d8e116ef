#include <benchmark/benchmark.h>

#include "sphere7/connection.hpp"
#include "sphere7/sampling.hpp"

using namespace sphere7;

static void BM_ConnectionEvaluate(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const conn::Connection a(m, conn::ConnectionMode::exact_mode());
  SplitMix64 g(7);
  const SpherePoint p = random_point_near_s(g);
  const TangentVector u = random_unit_tangent(g, p);
  for (auto _ : state) benchmark::DoNotOptimize(a.at(u));
}
BENCHMARK(BM_ConnectionEvaluate)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

static void BM_GreatCircleHolonomy(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  SplitMix64 g(8);
  const auto path = conn::PathSpec::great_circle_loop(random_point_near_s(g), random_point_near_s(g), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(conn::parallel_transport(path, m));
}
BENCHMARK(BM_GreatCircleHolonomy)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_ReebTransport(benchmark::State& state) {
  const ToricPoint t{{0.5, 0.5, 0.5, 0.5}, {0, 0, 0, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(conn::reeb_transport(t, 3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ReebTransport)->RangeMultiplier(10)->Range(100, 10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
