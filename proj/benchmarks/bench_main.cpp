#include <benchmark/benchmark.h>

#include "jastrow_dyn/ermakov.hpp"
#include "jastrow_dyn/quench.hpp"
#include "jastrow_dyn/sampling.hpp"
#include "jastrow_dyn/survival.hpp"
#include "jastrow_dyn/wavefunction.hpp"

using namespace jastrow_dyn;

namespace {

ScalingSolution release() { return scenario_scaling(QuenchScenario::trap_release(1.0), uniform_grid(0.0, 20.0, 0.01)); }

// Samples per second of the contour-shifted estimator, N = 4 long-range LL.
void BM_SpMonteCarlo(benchmark::State& state) {
    const auto s = release();
    const auto m = ModelSpec::exp_ll(4, 1.0, -1.0);
    SamplerOptions o;
    o.n_samples = state.range(0);
    o.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(sp_montecarlo(m, s, 5.0, 0.0, o).estimate);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpMonteCarlo)->Arg(1 << 14)->Arg(1 << 17)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_TdseResidual(benchmark::State& state) {
    const auto s = release();
    const auto m = ModelSpec::hyperbolic(static_cast<int>(state.range(0)), 1.0, 3.0, 1.0);
    const auto cfg = sample_phi(m, s, 2.0).samples;
    for (auto _ : state) benchmark::DoNotOptimize(tdse_residual(m, s, cfg, 2.0));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.size()));
}
BENCHMARK(BM_TdseResidual)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SolveForward(benchmark::State& state) {
    const auto grid = uniform_grid(0.0, 10.0, 1e-3);
    const auto proto = FrequencyProtocol::constant(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_forward(proto, 1.0, 0.0, grid).b(5.0));
}
BENCHMARK(BM_SolveForward)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
