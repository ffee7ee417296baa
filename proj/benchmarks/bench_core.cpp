#include <benchmark/benchmark.h>

#include "chlab/chlab.hpp"

using namespace chlab;

namespace {

Model torus_model(int n, DerivKernel kernel) {
    ModelSpec spec;
    spec.kind = ModelKind::Torus;
    spec.m = 1;
    PeriodicGrid3 grid;
    grid.n = n;
    grid.kernel = kernel;
    return build_model(spec, grid);
}

void BM_TorusTorsion(benchmark::State& state) {
    const Model m = torus_model(static_cast<int>(state.range(0)), DerivKernel::Exact);
    for (auto _ : state) {
        auto tau = torsion(m.background_metric, m.contact.reeb, *m.backend);
        benchmark::DoNotOptimize(tau);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m.backend->sites()));
}
BENCHMARK(BM_TorusTorsion)->Arg(16)->Arg(32);

void BM_TorusTorsionStencil(benchmark::State& state) {
    const Model m = torus_model(static_cast<int>(state.range(0)), DerivKernel::Stencil);
    for (auto _ : state) {
        auto tau = torsion(m.background_metric, m.contact.reeb, *m.backend);
        benchmark::DoNotOptimize(tau);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m.backend->sites()));
}
BENCHMARK(BM_TorusTorsionStencil)->Arg(16)->Arg(32)->Arg(64);

void BM_TannoResidual(benchmark::State& state) {
    const Model m = torus_model(static_cast<int>(state.range(0)), DerivKernel::Exact);
    for (auto _ : state) {
        auto res = tanno_residual(m.background_metric, m.contact, *m.backend);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_TannoResidual)->Arg(16)->Arg(32);

void BM_ObjectiveGradient(benchmark::State& state) {
    const Model m = torus_model(static_cast<int>(state.range(0)), DerivKernel::Exact);
    ParamProblem prob(m);
    const std::size_t n = m.backend->sites();
    ScalarField u(n, 0.1), r(n, 0.2), du, dr;
    for (auto _ : state) {
        prob.gradient(u, r, du, dr);
        benchmark::DoNotOptimize(dr);
    }
}
BENCHMARK(BM_ObjectiveGradient)->Arg(16)->Arg(32);

void BM_HomogeneousReport(benchmark::State& state) {
    ModelSpec spec;
    spec.kind = ModelKind::Sl2;
    spec.lambda = 1.0;
    const Model m = build_model(spec);
    for (auto _ : state) {
        auto rep = build_energy_report(m, m.background_metric);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_HomogeneousReport);

}  // namespace

BENCHMARK_MAIN();
