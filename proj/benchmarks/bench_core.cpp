#include <benchmark/benchmark.h>

#include "sepstab/normal_form.hpp"

using namespace sepstab;

static void BM_ReduceSurfaceHandle(benchmark::State& state) {
  Presentation p({2}, 1);
  GroupWord w = p.parse_word("a1 b1 t1 a2 b2' t1' a1' b2 t1 a1");
  for (auto _ : state) benchmark::DoNotOptimize(reduce(p, w));
}
BENCHMARK(BM_ReduceSurfaceHandle);

static void BM_CyclicClass(benchmark::State& state) {
  Presentation p({2}, 1);
  GroupWord w = p.parse_word("t1 a1 b1 t1' b2 a2 t1 t1 a1'");
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_class(p, w));
}
BENCHMARK(BM_CyclicClass);

static void BM_EnumerateBallF2(benchmark::State& state) {
  Presentation p({}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ball(p, (int)state.range(0)));
}
BENCHMARK(BM_EnumerateBallF2)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
