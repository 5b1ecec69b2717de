#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "mtss/validator.hpp"

namespace {

void BM_Validate(benchmark::State& state) {
  const auto script = mtss::bench::synthetic_script(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mtss::validate(script));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Validate)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

}  // namespace
