#include <benchmark/benchmark.h>

#include "tmsr/metrics.h"

namespace {

void BM_EvaluateMetrics(benchmark::State &state) {
    const tmsr::SqueezeParams p = tmsr::SqueezeParams::from_gain_db(8.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tmsr::evaluate_metrics(p, 50.0, 50.0, 5.0));
    }
}
BENCHMARK(BM_EvaluateMetrics);

void BM_DefaultLandscape(benchmark::State &state) {
    const auto gains = tmsr::default_gain_grid_db();
    const auto noise = tmsr::default_noise_grid();
    const auto jobs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tmsr::landscape(gains, noise, 5.0, jobs));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(gains.size() * noise.size()));
}
BENCHMARK(BM_DefaultLandscape)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
