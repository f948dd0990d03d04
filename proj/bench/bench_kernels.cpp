#include "uavmec/config.hpp"
#include "uavmec/kernels.hpp"
#include "uavmec/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace uavmec;

namespace {

kernels::PlanarArray array_of(int n)
{
    kernels::PlanarArray a;
    a.m_elems = n;
    a.n_elems = n;
    a.beta_x = -1.0;
    return a;
}

void BM_PatternPower(benchmark::State& state)
{
    const auto a = array_of(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::mean_pattern_power(a, {}));
}
BENCHMARK(BM_PatternPower)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PatternPowerReference(benchmark::State& state)
{
    const auto a = array_of(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::reference::mean_pattern_power(a, {}));
}
BENCHMARK(BM_PatternPowerReference)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

sweep::SweepSpec small_sweep()
{
    auto s = sweep::preset("fig2", config::defaults());
    s.values = sweep::log_space(1e-8, 1e-6, 9);
    return s;
}

void BM_Sweep(benchmark::State& state)
{
    const auto s = small_sweep();
    sweep::run_sweep(s); // table build outside the timed loop
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep::run_sweep(s, int(state.range(0))));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SweepSerial(benchmark::State& state)
{
    const auto s = small_sweep();
    sweep::run_sweep_serial(s);
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep::run_sweep_serial(s));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
