#include <benchmark/benchmark.h>

#include "hnn/experiments.hpp"
#include "hnn/haar.hpp"
#include "hnn/prox.hpp"
#include "hnn/solvers.hpp"
#include "hnn/tensor.hpp"

namespace {

hnn::Dims3 square(benchmark::State const& state)
{
    auto const n = static_cast<hnn::Index>(state.range(0));
    return {n, n, static_cast<hnn::Index>(state.range(1))};
}

void BM_Fhwt2Fast(benchmark::State& state)
{
    auto const t = hnn::random_normal(square(state), 1);
    for (auto _ : state) benchmark::DoNotOptimize(hnn::fhwt2(t));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * t.size() * sizeof(double)));
}
BENCHMARK(BM_Fhwt2Fast)->Args({64, 8})->Args({256, 31})->Args({512, 31})->Unit(benchmark::kMillisecond);

void BM_Fhwt2Dense(benchmark::State& state)
{
    auto const t = hnn::random_normal(square(state), 1);
    for (auto _ : state) benchmark::DoNotOptimize(hnn::fhwt2_dense(t));
}
BENCHMARK(BM_Fhwt2Dense)->Args({64, 8})->Args({256, 31})->Unit(benchmark::kMillisecond);

void BM_Ifhwt2Fast(benchmark::State& state)
{
    auto const blocks = hnn::fhwt2(hnn::random_normal(square(state), 2));
    for (auto _ : state) benchmark::DoNotOptimize(hnn::ifhwt2(blocks));
}
BENCHMARK(BM_Ifhwt2Fast)->Args({64, 8})->Args({256, 31})->Unit(benchmark::kMillisecond);

void BM_Svt(benchmark::State& state)
{
    auto const rows = state.range(0);
    hnn::Matrix const a = hnn::Matrix::Random(rows, state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(hnn::svt(a, 0.5));
}
BENCHMARK(BM_Svt)->Args({225, 30})->Args({4096, 31})->Unit(benchmark::kMillisecond);

void BM_Hnn(benchmark::State& state)
{
    auto const t = hnn::random_normal(square(state), 3);
    for (auto _ : state) benchmark::DoNotOptimize(hnn::hnn(t));
}
BENCHMARK(BM_Hnn)->Args({30, 30})->Args({128, 31})->Unit(benchmark::kMillisecond);

// Fixed iteration budget so the timing is per ADMM step.
void BM_McIterations(benchmark::State& state)
{
    hnn::Dims3 const dims{30, 30, 30};
    auto const truth = hnn::random_tucker(dims, {{3, 3, 3}, 4});
    auto const mask = hnn::random_mask(dims, 0.5, 5);
    auto const m = hnn::project(truth, mask);
    hnn::SolverConfig cfg;
    cfg.max_iter = static_cast<int>(state.range(0));
    cfg.tol = 1e-300;
    for (auto _ : state) benchmark::DoNotOptimize(hnn::hnn_mc(m, mask, cfg));
    state.counters["iter/s"] = benchmark::Counter(static_cast<double>(state.iterations() * state.range(0)),
                                                  benchmark::Counter::kIsRate);
}
BENCHMARK(BM_McIterations)->Arg(10)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
