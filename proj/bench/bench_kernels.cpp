// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "sumfree/bounds.hpp"
#include "sumfree/core.hpp"
#include "sumfree/enumeration.hpp"
#include "sumfree/partitions.hpp"

using namespace sumfree;

static CountQuery all_sizes(int n) {
  CountQuery q;
  q.n = n;
  return q;
}

static void BM_CountSerial(benchmark::State& state) {
  const CountQuery q = all_sizes(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_sum_free_serial(q).total);
}
BENCHMARK(BM_CountSerial)->DenseRange(30, 42, 4)->Unit(benchmark::kMillisecond);

static void BM_CountParallel(benchmark::State& state) {
  const CountQuery q = all_sizes(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_sum_free(q).total);
}
BENCHMARK(BM_CountParallel)->DenseRange(30, 42, 4)->Unit(benchmark::kMillisecond);

static void BM_Delta2Serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(delta2_serial(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Delta2Serial)->Arg(500)->Arg(2000);

static void BM_Delta2Parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(delta2(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Delta2Parallel)->Arg(500)->Arg(2000);

static void BM_RestrictedSerial(benchmark::State& state) {
  const PartitionQuery q{static_cast<int>(state.range(0)), 10, 40, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(count_restricted_serial(q));
}
BENCHMARK(BM_RestrictedSerial)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_RestrictedParallel(benchmark::State& state) {
  const PartitionQuery q{static_cast<int>(state.range(0)), 10, 40, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(count_restricted(q));
}
BENCHMARK(BM_RestrictedParallel)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_JansonSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const JansonInput in = schur_pair_family(n, IntSet::interval(1, n / 4, n), n / 8);
  for (auto _ : state) benchmark::DoNotOptimize(janson_quantities_serial(in).delta.log());
}
BENCHMARK(BM_JansonSerial)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_JansonParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const JansonInput in = schur_pair_family(n, IntSet::interval(1, n / 4, n), n / 8);
  for (auto _ : state) benchmark::DoNotOptimize(janson_quantities(in).delta.log());
}
BENCHMARK(BM_JansonParallel)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
