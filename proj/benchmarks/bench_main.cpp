#include "treewave/treewave.hpp"

#include <benchmark/benchmark.h>

using namespace treewave;

namespace {

void BM_PinningBounds(benchmark::State& state) {
    double d = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pinning_bounds(d, 2.0));
        d = d < 100.0 ? d * 1.001 : 0.5;
    }
}
BENCHMARK(BM_PinningBounds);

void BM_ReversalThresholds(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reversal_thresholds(0.9, 2.0));
}
BENCHMARK(BM_ReversalThresholds);

void BM_Rhs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const TreeParams p(1.0, 2.0, 0.7);
    const Reaction g = Reaction::mckean(0.7);
    const Profile u = make_initial(InitialCondition::Tail, p, n);
    for (auto _ : state) benchmark::DoNotOptimize(rhs(u, p, g));
    state.SetItemsProcessed(state.iterations() * (2 * n + 1));
}
BENCHMARK(BM_Rhs)->Arg(100)->Arg(1000);

// One time unit of RK4 on the default window.
void BM_IntegrateUnitTime(benchmark::State& state) {
    const TreeParams p(1.0, 2.0, 0.9);
    SimConfig cfg = default_config(p, 1.0);
    cfg.record_every = 1 << 30;
    const Profile u = step_profile(cfg.half_width);
    const Reaction g = Reaction::mckean(p.a());
    for (auto _ : state) benchmark::DoNotOptimize(integrate(u, p, g, cfg));
}
BENCHMARK(BM_IntegrateUnitTime)->Unit(benchmark::kMicrosecond);

void BM_BesselI(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bessel_i(7, x));
}
BENCHMARK(BM_BesselI)->Arg(1)->Arg(10)->Arg(40)->Arg(300);

void BM_LinearKernel(benchmark::State& state) {
    const KernelParams kp(1.0, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(linear_kernel(3, 5.0, kp));
}
BENCHMARK(BM_LinearKernel);

void BM_StationaryWindowSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::solve_stationary_window(1.0, 2.0, n));
    state.SetItemsProcessed(state.iterations() * (2 * n + 1));
}
BENCHMARK(BM_StationaryWindowSolve)->Arg(200)->Arg(2000);

}  // namespace
BENCHMARK_MAIN();
