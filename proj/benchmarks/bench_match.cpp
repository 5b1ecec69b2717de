#include <benchmark/benchmark.h>

#include <random>

#include "bench_common.hpp"
#include "mtss/assignment.hpp"
#include "mtss/evalx.hpp"

namespace {

mtss::Matrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  mtss::Matrix m(n, std::vector<double>(n));
  for (auto& row : m)
    for (auto& x : row) x = d(rng);
  return m;
}

void BM_Hungarian(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(mtss::min_cost_assignment(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hungarian)->RangeMultiplier(2)->Range(4, 256)->Complexity(benchmark::oNCubed);

void BM_Exhaustive(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 12);
  for (auto _ : state) benchmark::DoNotOptimize(mtss::min_cost_assignment_exhaustive(m));
}
BENCHMARK(BM_Exhaustive)->DenseRange(2, 8);

void BM_Evaluate(benchmark::State& state) {
  const auto gold = mtss::bench::synthetic_script(static_cast<std::size_t>(state.range(0)), 1);
  const auto cand = mtss::bench::synthetic_script(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(mtss::evaluate(gold, cand));
}
BENCHMARK(BM_Evaluate)->RangeMultiplier(4)->Range(4, 256);

}  // namespace
