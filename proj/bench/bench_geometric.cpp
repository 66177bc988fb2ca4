#include <benchmark/benchmark.h>

#include "dirac/trace_terms.hpp"

namespace {

using namespace dirac;

TraceSettings bench_settings(int resolution, double radius) {
    TraceSettings s;
    s.grid.resolution = resolution;
    s.truncation_radius = radius;
    return s;
}

const SurfaceModel& model() {
    static const SurfaceModel m = SurfaceModel::gamma2(SpinAssignment({-1, -1}));
    return m;
}

void BM_GeometricSerial(benchmark::State& state) {
    const auto s = bench_settings(static_cast<int>(state.range(0)), static_cast<double>(state.range(1)));
    const WindowParams p(0, 2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(geometric_term_serial(model(), p, 8, s).R_K());
}

void BM_GeometricParallel(benchmark::State& state) {
    const auto s = bench_settings(static_cast<int>(state.range(0)), static_cast<double>(state.range(1)));
    const WindowParams p(0, 2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(geometric_term(model(), p, 8, s).R_K());
}

}  // namespace

BENCHMARK(BM_GeometricSerial)->Args({8, 7})->Args({8, 9})->Args({16, 9})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeometricParallel)->Args({8, 7})->Args({8, 9})->Args({16, 9})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
