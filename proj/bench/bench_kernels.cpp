// Serial reference vs OpenMP kernels. Run with --benchmark_filter to pick one.

#include <benchmark/benchmark.h>

#include "splitkit/scan.hpp"
#include "splitkit/sweeps.hpp"

using namespace splitkit;

namespace {

void BM_ScanSerial(benchmark::State& state) {
    const ScanParameters p{1, state.range(0), 0};
    for (auto _ : state) benchmark::DoNotOptimize(scan_serial(p, {}));
}

void BM_ScanParallel(benchmark::State& state) {
    const ScanParameters p{1, state.range(0), 0};
    for (auto _ : state) benchmark::DoNotOptimize(scan(p, {}));
}

// Searches without the counting shortcut, so the exact-cover core dominates.
void BM_ScanSerialUnpruned(benchmark::State& state) {
    const ScanParameters p{1, state.range(0), 0};
    ScanOptions o;
    o.search.order_profile_pruning = false;
    o.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(scan_serial(p, o));
}

void BM_ScanParallelUnpruned(benchmark::State& state) {
    const ScanParameters p{1, state.range(0), 0};
    ScanOptions o;
    o.search.order_profile_pruning = false;
    for (auto _ : state) benchmark::DoNotOptimize(scan(p, o));
}

void BM_AbcdeSerial(benchmark::State& state) {
    const AbcdeGrid g{state.range(0), 97, 2, 3};
    for (auto _ : state) benchmark::DoNotOptimize(abcde_sweep_serial(g));
}

void BM_AbcdeParallel(benchmark::State& state) {
    const AbcdeGrid g{state.range(0), 97, 2, 3};
    for (auto _ : state) benchmark::DoNotOptimize(abcde_sweep(g));
}

void BM_DigitsSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(digit_pattern_sweep_serial(state.range(0), 100));
}

void BM_DigitsParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(digit_pattern_sweep(state.range(0), 100));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerialUnpruned)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallelUnpruned)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AbcdeSerial)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AbcdeParallel)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DigitsSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DigitsParallel)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
