#include <benchmark/benchmark.h>

#include <cmath>

#include "xdiff/entropy.hpp"
#include "xdiff/reference.hpp"
#include "xdiff/rng.hpp"
#include "xdiff/solver.hpp"

using namespace xdiff;

namespace {

State smooth_state(const Grid1D& grid) {
    const double pi = 3.14159265358979323846;
    return sample_state(
        grid,
        [&](double x) { return 0.6 + 0.4 * std::cos(pi * (x - grid.x_lo()) / grid.length()); },
        [&](double x) {
            return 0.8 + 0.2 * std::cos(2.0 * pi * (x - grid.x_lo()) / grid.length());
        });
}

State rough_state(const Grid1D& grid) {
    Rng rng(77);
    const auto n = static_cast<std::size_t>(grid.n_cells());
    std::vector<double> f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = rng.next_unit() < 0.15 ? 0.0 : rng.uniform(0.0, 2.0);
        g[i] = rng.next_unit() < 0.15 ? 0.0 : rng.uniform(0.0, 2.0);
    }
    return make_state(grid, std::move(f), std::move(g));
}

} // namespace

static void BM_AssembleFluxes(benchmark::State& state) {
    const ModelParams p(1, 1, 1, 2);
    const Grid1D grid(0, 1, static_cast<int>(state.range(0)));
    const State s = smooth_state(grid);
    SolverConfig cfg;
    for (auto _ : state) {
        auto fl = assemble_fluxes(p, s, cfg);
        benchmark::DoNotOptimize(fl.F_f.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AssembleFluxes)->Arg(64)->Arg(256)->Arg(1024);

static void BM_ImplicitStepSmooth(benchmark::State& state) {
    const ModelParams p(1, 1, 1, 2);
    const Grid1D grid(0, 1, static_cast<int>(state.range(0)));
    const State s = smooth_state(grid);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    for (auto _ : state) {
        auto r = step(p, s, cfg);
        benchmark::DoNotOptimize(r.state.f.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ImplicitStepSmooth)->Arg(64)->Arg(256)->Arg(1024);

static void BM_ImplicitStepRough(benchmark::State& state) {
    const ModelParams p(1, 1, 1, 2);
    const Grid1D grid(0, 1, static_cast<int>(state.range(0)));
    const State s = rough_state(grid);
    SolverConfig cfg;
    cfg.dt = 5e-4;
    cfg.mobility_average = MobilityAverage::Upwind;
    for (auto _ : state) {
        auto r = step(p, s, cfg);
        benchmark::DoNotOptimize(r.state.f.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ImplicitStepRough)->Arg(128)->Arg(512);

static void BM_RelativeEntropy(benchmark::State& state) {
    const ModelParams p(1, 1, 1, 2);
    const Grid1D grid(0, 1, static_cast<int>(state.range(0)));
    const State u1 = smooth_state(grid);
    const State u2 = constant_state(grid, 0.9, 0.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(relative_entropy(p, u1, u2));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RelativeEntropy)->Arg(256)->Arg(4096);

static void BM_ProductionDecomposition(benchmark::State& state) {
    const ModelParams p(1, 1, 1, 2);
    const Grid1D grid(0, 1, static_cast<int>(state.range(0)));
    const State u1 = smooth_state(grid);
    const State u2 = constant_state(grid, 0.9, 0.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(production_decomposition(p, u1, u2).T2_II);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProductionDecomposition)->Arg(256)->Arg(4096);

BENCHMARK_MAIN();
