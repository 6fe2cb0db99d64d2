#include <benchmark/benchmark.h>

#include <heightlat/heightlat.hpp>

using namespace heightlat;

namespace {

void BM_Sweep(benchmark::State& state) {
  auto tau = BoundaryCondition::zero(ball_domain(2, static_cast<int>(state.range(0))));
  ChainState chain{extend_min(tau)};
  RandomSource rng(1);
  std::int64_t epoch = 0;
  for (auto _ : state) sweep(chain, epoch++, rng);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tau.domain().num_interior()));
}
BENCHMARK(BM_Sweep)->Arg(9)->Arg(33)->Arg(129);

void BM_Cftp(benchmark::State& state) {
  auto tau = BoundaryCondition::zero(ball_domain(2, static_cast<int>(state.range(0))));
  CftpOptions opts;
  opts.allow_fast_kernel = state.range(1) != 0;
  opts.initial_horizon = suggested_initial_horizon(2, static_cast<int>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(cftp_sample(tau, RandomSource(seed++), opts).horizon);
}
BENCHMARK(BM_Cftp)->Args({9, 0})->Args({9, 1})->Args({33, 0})->Args({33, 1})->Unit(benchmark::kMillisecond);

void BM_CountExtensions(benchmark::State& state) {
  auto tau = BoundaryCondition::zero(ball_domain(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(count_extensions(tau));
}
BENCHMARK(BM_CountExtensions)->Arg(2)->Arg(3);

void BM_EnumerateBridge(benchmark::State& state) {
  auto tau = BoundaryCondition::zero(ball_domain(1, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(count_extensions(tau));
}
BENCHMARK(BM_EnumerateBridge)->Arg(5)->Arg(9);

}  // namespace
BENCHMARK_MAIN();
