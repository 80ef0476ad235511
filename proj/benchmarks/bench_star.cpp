#include <benchmark/benchmark.h>

#include "stardeform/fixtures.hpp"
#include "stardeform/module.hpp"
#include "stardeform/sampling.hpp"

using namespace stardeform;

namespace {

const Variables& xp()
{
    static const Variables v = make_variables({"x", "p"});
    return v;
}

StarAlgebra moyal(int order)
{
    return moyal_stack(1, standard_symplectic(1), order, xp());
}

void BM_StarPolynomial(benchmark::State& state)
{
    const auto alg = moyal(static_cast<int>(state.range(0)));
    Sampler s(1);
    const Series f = s.series(alg.variables(), alg.domain(), alg.order(), 3, 4, true);
    const Series g = s.series(alg.variables(), alg.domain(), alg.order(), 3, 4, true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(alg.star(f, g));
    }
}
BENCHMARK(BM_StarPolynomial)->DenseRange(1, 5);

void BM_StarMatrixBott(benchmark::State& state)
{
    const auto alg = moyal(static_cast<int>(state.range(0)));
    const auto p0 = bott_projection(alg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(star(alg, p0, p0));
    }
}
BENCHMARK(BM_StarMatrixBott)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_FedosovProjection(benchmark::State& state)
{
    const auto alg = moyal(static_cast<int>(state.range(0)));
    const auto p0 = bott_projection(alg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(deform_projection_fedosov(alg, p0, true));
    }
}
BENCHMARK(BM_FedosovProjection)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ModuleAction(benchmark::State& state)
{
    const auto alg = moyal(3);
    const auto dm = DeformedModule::fedosov(alg, bott_projection(alg));
    Sampler s(2);
    const StarMatrix x = dm.project(StarMatrix::unit_column(alg, 2, 0));
    const Series a = s.series(alg.variables(), alg.domain(), alg.order(), 1, 2, true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(module_action(dm, x, a));
    }
}
BENCHMARK(BM_ModuleAction)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
