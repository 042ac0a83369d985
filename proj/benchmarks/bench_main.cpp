#include <benchmark/benchmark.h>

#include "logspiral/classify.hpp"
#include "logspiral/criticality.hpp"
#include "logspiral/dynamics.hpp"
#include "logspiral/kernel.hpp"

using namespace logspiral;

static void BM_EvalKernel(benchmark::State& state) {
    const SpiralParams p(0.3);
    double th = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_kernel(p, th));
        th = th < 6.0 ? th + 0.01 : 0.1;
    }
}
BENCHMARK(BM_EvalKernel);

static void BM_ThetaStars(benchmark::State& state) {
    const SpiralParams p(0.3);
    for (auto _ : state) benchmark::DoNotOptimize(solve_theta_stars(p));
}
BENCHMARK(BM_ThetaStars);

static void BM_CriticalBetas(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_critical_betas());
}
BENCHMARK(BM_CriticalBetas)->Unit(benchmark::kMillisecond);

static void BM_IntegrateReparam(benchmark::State& state) {
    const SpiralParams p(0.3);
    Controls c;
    c.record_steps = false;
    for (auto _ : state) benchmark::DoNotOptimize(integrate_reparam(p, {0.9, 3.0}, Direction::forward, c));
}
BENCHMARK(BM_IntegrateReparam)->Unit(benchmark::kMicrosecond);

static void BM_IntegrateOriginal(benchmark::State& state) {
    const SpiralParams p(0.3);
    Controls c;
    c.max_time = 1e4;
    c.record_steps = false;
    for (auto _ : state) benchmark::DoNotOptimize(integrate_original(p, {0.9, 1.0, 3.0}, Direction::forward, c));
}
BENCHMARK(BM_IntegrateOriginal)->Unit(benchmark::kMicrosecond);

static void BM_Classify(benchmark::State& state) {
    const Classifier c(0.3);
    for (auto _ : state) benchmark::DoNotOptimize(c.classify(2.0, -1.0, 1.2, Direction::forward));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMicrosecond);

static void BM_BasinSweep(benchmark::State& state) {
    const SpiralParams p(0.3);
    GridSpec g;
    g.n_a = g.n_theta = 21;
    for (auto _ : state) benchmark::DoNotOptimize(basin_sweep(p, g));
}
BENCHMARK(BM_BasinSweep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
