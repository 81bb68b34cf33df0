#include <benchmark/benchmark.h>

#include "crtlab/line_breaking.hpp"
#include "crtlab/rng.hpp"
#include "crtlab/samplers.hpp"
#include "crtlab/theta.hpp"
#include "crtlab/tree_extract.hpp"

using namespace crtlab;

static std::vector<double> uniform_weights(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

static void BM_SampleXn(benchmark::State& state) {
    const auto w = uniform_weights(static_cast<std::size_t>(state.range(0)));
    Rng rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(sample_X_n(w, rng));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleXn)->RangeMultiplier(10)->Range(10, 100000)->Complexity();

static void BM_LifoTree(benchmark::State& state) {
    Rng rng(2, 0);
    const StepPath x = sample_X_n(uniform_weights(static_cast<std::size_t>(state.range(0))), rng).excursion;
    for (auto _ : state) benchmark::DoNotOptimize(lifo_tree(x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LifoTree)->RangeMultiplier(10)->Range(10, 100000)->Complexity();

static void BM_ExtractTree(benchmark::State& state) {
    Rng rng(3, 0);
    const StepPath x = sample_X_n(uniform_weights(10000), rng).excursion;
    const MarkSet marks = sample_marks(static_cast<std::size_t>(state.range(0)), rng, x);
    for (auto _ : state) benchmark::DoNotOptimize(extract_tree(x, marks));
}
BENCHMARK(BM_ExtractTree)->Arg(3)->Arg(10)->Arg(100);

static void BM_LineBreaking(benchmark::State& state) {
    const ThetaParam th = parse_theta_spec("polynomial:1,1,50");
    Rng rng(4, 0);
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sample_line_breaking(th, k, rng).reduced_tree(k));
}
BENCHMARK(BM_LineBreaking)->Arg(3)->Arg(100)->Arg(2000);

static void BM_PsiInv(benchmark::State& state) {
    const ThetaParam th = parse_theta_spec("polynomial:1,1,50");
    double k = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi_inv(th, k));
        k = k > 1e4 ? 1.0 : k * 1.1;
    }
}
BENCHMARK(BM_PsiInv);

static void BM_StableSurrogate(benchmark::State& state) {
    Rng rng(5, 0);
    for (auto _ : state) benchmark::DoNotOptimize(sample_stable_jump_surrogate(1.5, 1e-4, rng, 2000000));
}
BENCHMARK(BM_StableSurrogate)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
