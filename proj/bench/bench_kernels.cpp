#include <benchmark/benchmark.h>

#include "macs/coverage.hpp"
#include "macs/mc_validation.hpp"
#include "macs/solver.hpp"

using namespace macs;

namespace {

const Scenario kScenario = Scenario::symmetric_interval(0.01, 0.95, 10, 1.0);
const BandForm kForm{BandName::UV, false};
const CriticalConstants kConstants{2.4, 4.1};

McConfig mc_config(std::int64_t draws) {
  McConfig cfg;
  cfg.n_draws = draws;
  return cfg;
}

void BM_McCoverageSerial(benchmark::State& state) {
  const McConfig cfg = mc_config(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_coverage_serial(kConstants, kScenario, kForm, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McCoverageParallel(benchmark::State& state) {
  const McConfig cfg = mc_config(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_coverage(kConstants, kScenario, kForm, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McAreaSerial(benchmark::State& state) {
  const McConfig cfg = mc_config(state.range(0));
  const WedgeGeometry geo = wedge_geometry(kConstants, kScenario, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_region_area_serial(kConstants, geo, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McAreaParallel(benchmark::State& state) {
  const McConfig cfg = mc_config(state.range(0));
  const WedgeGeometry geo = wedge_geometry(kConstants, kScenario, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_region_area(kConstants, geo, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CoverageSerial(benchmark::State& state) {
  CoverageOptions opt;
  opt.parallel = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(coverage_probability(kConstants, kScenario, kForm, opt));
  }
}

void BM_CoverageParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(coverage_probability(kConstants, kScenario, kForm));
  }
}

void BM_SolveSymmetric(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_symmetric(kScenario, {BandName::UV, true}));
  }
}

}  // namespace

BENCHMARK(BM_McCoverageSerial)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McCoverageParallel)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_McAreaSerial)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McAreaParallel)->Arg(1'000'000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CoverageSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverageParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SolveSymmetric)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
