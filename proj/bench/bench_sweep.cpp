// Serial reference loop vs the OpenMP worker pool on the same sweep.
#include <benchmark/benchmark.h>

#include "dce/sweep.hpp"

namespace {

dce::SweepSpec asymptotic_spec() {
    dce::SweepSpec s;
    s.mode = dce::SweepMode::Asymptotic;
    s.g_grid = dce::linspace(0.1, 1.0, 8);
    s.tau_grid = dce::linspace(0.25, 2.0, 8);
    return s;
}

dce::SweepSpec window_spec() {
    dce::SweepSpec s;
    s.mode = dce::SweepMode::Windows;
    s.g_grid = dce::linspace(0.2, 0.8, 4);
    return s;
}

void BM_AsymptoticSerial(benchmark::State& state) {
    const auto spec = asymptotic_spec();
    for (auto _ : state) benchmark::DoNotOptimize(dce::run_sweep_serial(spec));
}

void BM_AsymptoticParallel(benchmark::State& state) {
    const auto spec = asymptotic_spec();
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dce::run_sweep(spec, workers));
}

void BM_WindowsSerial(benchmark::State& state) {
    const auto spec = window_spec();
    for (auto _ : state) benchmark::DoNotOptimize(dce::run_sweep_serial(spec));
}

void BM_WindowsParallel(benchmark::State& state) {
    const auto spec = window_spec();
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dce::run_sweep(spec, workers));
}

} // namespace

BENCHMARK(BM_AsymptoticSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AsymptoticParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WindowsSerial)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(1);
BENCHMARK(BM_WindowsParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(1);

BENCHMARK_MAIN();
