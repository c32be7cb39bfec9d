// Serial reference vs OpenMP kernels on the box iso search and the sweeps.

#include <benchmark/benchmark.h>

#include "bottrig/extension.hpp"
#include "bottrig/harness.hpp"
#include "bottrig/iso_search.hpp"

using namespace bottrig;

namespace {

IsoSearchProblem height4_problem(std::int64_t box) {
  const BottTower t = BottTower::from_rows({{}, {1}, {2, 0}, {0, 1, -1}});
  return {t, t, 0, box};
}

void BM_SearchSerial(benchmark::State& state) {
  const auto p = height4_problem(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_isos_serial(p));
}

void BM_SearchOpenMP(benchmark::State& state) {
  const auto p = height4_problem(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_isos_omp(p));
}

void BM_FiberBruteForce(benchmark::State& state) {
  const auto backend = static_cast<Backend>(state.range(0));
  for (auto _ : state)
    for (std::int64_t a = -6; a <= 6; ++a) benchmark::DoNotOptimize(brute_force_fiber_automorphisms(a, a * a / 2 + 2, backend));
}

void BM_VerifyExtensions(benchmark::State& state) {
  SearchConfig cfg;
  cfg.base_height = 1;
  cfg.coeff_bound = 3;
  cfg.backend = static_cast<Backend>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_extensions(cfg));
}

void BM_VerifyMain(benchmark::State& state) {
  SearchConfig cfg;
  cfg.base_height = 1;
  cfg.coeff_bound = 1;
  cfg.backend = static_cast<Backend>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_main_theorem(cfg));
}

}  // namespace

BENCHMARK(BM_SearchSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchOpenMP)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FiberBruteForce)
    ->Arg(static_cast<int>(Backend::Serial))
    ->Arg(static_cast<int>(Backend::OpenMP))
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyExtensions)
    ->Arg(static_cast<int>(Backend::Serial))
    ->Arg(static_cast<int>(Backend::OpenMP))
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyMain)
    ->Arg(static_cast<int>(Backend::Serial))
    ->Arg(static_cast<int>(Backend::OpenMP))
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
