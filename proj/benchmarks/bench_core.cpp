#include <benchmark/benchmark.h>

#include "levy/discrete.hpp"
#include "levy/evaluation.hpp"
#include "levy/fitting.hpp"
#include "levy/model_selection.hpp"
#include "levy/process.hpp"

using namespace levy;

namespace {

const GammaParams kGamma{1.0, 1.0};

void BM_GammaSeries(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t s = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_gamma_jumps(kGamma, 365.0, n, RngStream(1, s++)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GammaSeries)->Arg(2000)->Arg(36500);

void BM_GammaSkeleton(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t s = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_gamma_skeleton(kGamma, 365.0, n, RngStream(2, s++)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GammaSkeleton)->Arg(365)->Arg(36500);

void BM_SelectRegular(benchmark::State& state) {
    const auto jumps = simulate_gamma_jumps(kGamma, 365.0, 2000, RngStream(3, 0));
    const auto family = regular_family({0.1, 1.0}, ReferenceMeasure::lebesgue(), 1,
                                       static_cast<std::size_t>(state.range(0)));
    const auto pen = PenaltyForm::b(2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(select(jumps, family, pen));
    }
}
BENCHMARK(BM_SelectRegular)->Arg(40)->Arg(328);

void BM_ApproxSelect(benchmark::State& state) {
    const auto inc = simulate_gamma_skeleton(kGamma, 365.0, static_cast<std::size_t>(state.range(0)), RngStream(4, 0));
    const auto family = regular_family({0.1, 1.0}, ReferenceMeasure::lebesgue(), 1, 40);
    for (auto _ : state) {
        benchmark::DoNotOptimize(approx_select(inc, family, 2.0));
    }
}
BENCHMARK(BM_ApproxSelect)->Arg(730)->Arg(36500);

void BM_MleGamma(benchmark::State& state) {
    const auto inc = simulate_gamma_skeleton(kGamma, 365.0, static_cast<std::size_t>(state.range(0)), RngStream(5, 0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mle_gamma(inc));
    }
}
BENCHMARK(BM_MleGamma)->Arg(365)->Arg(36500);

void BM_L2Distance(benchmark::State& state) {
    const auto model = build_model({0.1, 1.0}, ReferenceMeasure::lebesgue(),
                                   BasisSpec::regular(static_cast<std::size_t>(state.range(0))));
    const auto truth = truth_density(kGamma, model.measure());
    const auto target = orthogonal_projection(truth, model);
    for (auto _ : state) {
        benchmark::DoNotOptimize(l2_distance_sq(target, truth, model));
    }
}
BENCHMARK(BM_L2Distance)->Arg(10)->Arg(40);

void BM_McRisk(benchmark::State& state) {
    ExperimentConfig c;
    c.collection.m_max = 40;
    c.replications = static_cast<std::size_t>(state.range(0));
    c.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_risk(c));
    }
}
BENCHMARK(BM_McRisk)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
