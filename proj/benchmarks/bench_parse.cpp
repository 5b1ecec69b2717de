#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "mtss/parser.hpp"

namespace {

void BM_Parse(benchmark::State& state) {
  const auto text = mtss::serialize(mtss::bench::synthetic_script(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(mtss::parse_document(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Parse)->RangeMultiplier(4)->Range(4, 1024);

void BM_Serialize(benchmark::State& state) {
  const auto script = mtss::bench::synthetic_script(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mtss::serialize(script));
}
BENCHMARK(BM_Serialize)->RangeMultiplier(4)->Range(4, 1024);

}  // namespace
