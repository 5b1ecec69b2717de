#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "mtss/timeline.hpp"

namespace {

void BM_BuildIndex(benchmark::State& state) {
  const auto script = mtss::bench::synthetic_script(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mtss::build_index(script));
}
BENCHMARK(BM_BuildIndex)->RangeMultiplier(4)->Range(4, 4096);

void BM_Stab(benchmark::State& state) {
  const auto script = mtss::bench::synthetic_script(static_cast<std::size_t>(state.range(0)));
  const auto index = mtss::build_index(script);
  const auto span = script.meta.duration.count;
  std::int64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.events_active_at(mtss::from_ms(t)));
    t = (t + 7919) % span;
  }
}
BENCHMARK(BM_Stab)->RangeMultiplier(4)->Range(4, 4096);

void BM_InferActive(benchmark::State& state) {
  const auto script = mtss::bench::synthetic_script(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mtss::infer_active_events(script));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_InferActive)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

}  // namespace
