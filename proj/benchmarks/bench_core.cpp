#include <benchmark/benchmark.h>

#include "homoclinic/classify.hpp"
#include "homoclinic/flow.hpp"
#include "homoclinic/majorize.hpp"
#include "homoclinic/matkit.hpp"
#include "homoclinic/models.hpp"
#include "homoclinic/random.hpp"

#include <algorithm>
#include <numeric>

using namespace homoclinic;

namespace {

Vec frequencies(std::size_t l) {
    Vec w(l);
    for (std::size_t i = 0; i < l; ++i) w[i] = 1.0 + 0.37 * static_cast<double>(i);
    return w;
}

} // namespace

static void BM_Eigendecomposition(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SeededStream rng(1, 0);
    const Mat s = rng.symmetric(n);
    for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigendecomposition(s));
}
BENCHMARK(BM_Eigendecomposition)->Arg(2)->Arg(6)->Arg(12)->Arg(24);

static void BM_MatrixExponential(benchmark::State& state) {
    const auto l = static_cast<std::size_t>(state.range(0));
    SeededStream rng(2, 0);
    const Mat a = standard_symplectic_form(l) * rng.symmetric(2 * l);
    for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(a));
}
BENCHMARK(BM_MatrixExponential)->Arg(1)->Arg(3)->Arg(6);

static void BM_ScatteringMatrix(benchmark::State& state) {
    const auto l = static_cast<std::size_t>(state.range(0));
    SeededStream rng(3, 0);
    ModelSpec spec = integrable_spec(frequencies(l));
    spec.eps = 0.1;
    spec.C = rng.symmetric(2 * l);
    const ScatteringProblem p = center_scattering_problem(spec);
    for (auto _ : state) benchmark::DoNotOptimize(scattering_matrix(p));
}
BENCHMARK(BM_ScatteringMatrix)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_MirskyConstruct(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Vec eigs(n);
    std::iota(eigs.begin(), eigs.end(), 1.0);
    const double mean = std::accumulate(eigs.begin(), eigs.end(), 0.0) / static_cast<double>(n);
    const Vec diag(n, mean);
    for (auto _ : state) benchmark::DoNotOptimize(mirsky_construct(diag, eigs));
}
BENCHMARK(BM_MirskyConstruct)->Arg(2)->Arg(6)->Arg(12);

static void BM_RealizeSignature(benchmark::State& state) {
    const auto l = static_cast<std::size_t>(state.range(0));
    const Vec w = frequencies(l);
    for (auto _ : state) benchmark::DoNotOptimize(realize_signature(l, l, w, 1e-2));
}
BENCHMARK(BM_RealizeSignature)->Arg(1)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
