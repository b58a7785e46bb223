#include <benchmark/benchmark.h>

#include "ragg/ragg.hpp"

namespace {

void BM_ConditionalExpectation(benchmark::State& state) {
  const ragg::InfoStructure info = ragg::secret_sharing(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ragg::conditional_expectation(info, ragg::SignalSubset::from_mask(0b011)));
  }
  state.counters["states"] = static_cast<double>(info.num_states());
}
BENCHMARK(BM_ConditionalExpectation)->Arg(5)->Arg(11)->Arg(23);

void BM_CheckProjective(benchmark::State& state) {
  const ragg::InfoStructure info = ragg::random_projective_structure(static_cast<int>(state.range(0)), 2, 42);
  for (auto _ : state) benchmark::DoNotOptimize(ragg::check_projective(info));
}
BENCHMARK(BM_CheckProjective)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CheckWeak(benchmark::State& state) {
  const ragg::InfoStructure info = ragg::secret_sharing(3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(ragg::check_weak(info));
}
BENCHMARK(BM_CheckWeak)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const ragg::GaussianFamily f = ragg::GaussianFamily::independent_standard(10);
  const ragg::MonteCarloOptions opts{.stream_size = 1 << 16, .workers = 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ragg::sample_and_estimate_ratio(f, 1.8, static_cast<std::uint64_t>(state.range(0)), 7, opts));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_KnownPriorBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ragg::optimize_known_prior(n));
}
BENCHMARK(BM_KnownPriorBound)->Arg(2)->Arg(100)->Arg(1000000);

void BM_GuaranteeTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ragg::emit_guarantee_table(10));
}
BENCHMARK(BM_GuaranteeTable);

}  // namespace

BENCHMARK_MAIN();
