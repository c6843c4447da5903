#include <benchmark/benchmark.h>

#include "stochord/montecarlo.hpp"
#include "stochord/order_certifier.hpp"
#include "stochord/theorem_bench.hpp"

using namespace stochord;

namespace {

SystemSpec parallel_system() {
  SystemSpec s{{}, Structure::parallel};
  for (double a : {0.7, 1.3, 2.2, 3.1, 4.4, 0.9, 1.8, 2.7}) {
    s.components.emplace_back(WeibullGParams{a, 2.5, 1.1, Baseline::exponential()});
  }
  return s;
}

SystemSpec series_system() {
  SystemSpec s{{}, Structure::series};
  for (double a : {0.7, 1.3, 2.2, 3.1}) s.components.emplace_back(GompertzMakehamParams{a, 1.2, 0.4});
  return s;
}

template <Execution E>
void BM_CertifyRh(benchmark::State& state) {
  const auto f = parallel_system();
  auto g = f;
  g.components.front() = WeibullGParams{0.5, 2.5, 1.1, Baseline::exponential()};
  const auto grid = grid_for(f, g, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(certify(Order::rh, g, f, grid, {}, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Execution E>
void BM_CertifySt(benchmark::State& state) {
  const auto f = series_system();
  const auto g = parallel_system();
  const auto grid = grid_for(f, g, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(certify(Order::st, f, g, grid, {}, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Execution E>
void BM_TheoremSweep(benchmark::State& state) {
  TheoremScenario s;
  s.id = TheoremId::T3_3;
  s.count = static_cast<std::size_t>(state.range(0));
  s.exec = E;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s));
}

template <Execution E>
void BM_SystemSampling(benchmark::State& state) {
  const auto s = parallel_system();
  for (auto _ : state) benchmark::DoNotOptimize(empirical_system_check(s, static_cast<std::size_t>(state.range(0)), 1, E));
}

}  // namespace

BENCHMARK(BM_CertifyRh<Execution::serial>)->Arg(2048)->Arg(1 << 16)->UseRealTime();
BENCHMARK(BM_CertifyRh<Execution::parallel>)->Arg(2048)->Arg(1 << 16)->UseRealTime();
BENCHMARK(BM_CertifySt<Execution::serial>)->Arg(2048)->Arg(1 << 16)->UseRealTime();
BENCHMARK(BM_CertifySt<Execution::parallel>)->Arg(2048)->Arg(1 << 16)->UseRealTime();
BENCHMARK(BM_TheoremSweep<Execution::serial>)->Arg(50)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TheoremSweep<Execution::parallel>)->Arg(50)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SystemSampling<Execution::serial>)->Arg(20000)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SystemSampling<Execution::parallel>)->Arg(20000)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
