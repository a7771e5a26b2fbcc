// Serial reference vs OpenMP kernels: sweep grid and Wigner grid.
//
//   ./bench_kernels --benchmark_filter=Sweep
//
// Thread counts above the core count only measure scheduling overhead.

#include <benchmark/benchmark.h>

#include <numbers>

#include "qsync/experiments.hpp"
#include "qsync/grid.hpp"
#include "qsync/wigner.hpp"

namespace {

using namespace qsync;

SweepSpec bench_spec() {
  SweepSpec s;
  s.base.gamma2 = 10.0;
  s.base.phi = std::numbers::pi / 2;
  s.base.fock_dim = 20;
  s.axes = {{"drive", 0.0, 1.0, 4, Spacing::linear}, {"eta", 0.0, 1.0, 4, Spacing::linear}};
  return s;
}

DensityMatrix bench_state() {
  OscillatorParams p;
  p.drive = 0.5;
  p.eta = 0.5;
  p.phi = std::numbers::pi / 2;
  p.fock_dim = 30;
  return solve_steady_state(p).rho;
}

void BM_SweepSerial(benchmark::State& state) {
  const SweepSpec spec = bench_spec();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(spec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(spec.point_count()));
}

void BM_SweepParallel(benchmark::State& state) {
  const SweepSpec spec = bench_spec();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, workers));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(spec.point_count()));
}

void BM_WignerSerial(benchmark::State& state) {
  const DensityMatrix rho = bench_state();
  const auto axis = linspace(-4.0, 4.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wigner_serial(rho, axis, axis));
}

void BM_WignerParallel(benchmark::State& state) {
  const DensityMatrix rho = bench_state();
  const auto axis = linspace(-4.0, 4.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wigner(rho, axis, axis));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerSerial)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerParallel)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
