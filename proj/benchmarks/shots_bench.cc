#include <benchmark/benchmark.h>

#include "tmsr/readout_stats.h"
#include "tmsr/shots.h"
#include "tmsr/units.h"

namespace {

tmsr::ShotSet make_shots(std::size_t per_state, std::uint64_t seed) {
    tmsr::ShotHeader h;
    h.seed = seed;
    h.r = tmsr::gain_to_r(tmsr::db_to_linear(2.3));
    h.nbar_in = 90.0;
    h.theta = tmsr::deg_to_rad(53.7);
    h.n_sys_a = 28.2;
    h.n_sys_b = 13.4;
    h.shots_per_state = per_state;
    return tmsr::sample_shots(h);
}

void BM_SampleShots(benchmark::State &state) {
    const auto per_state = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_shots(per_state, seed++));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * per_state));
}
BENCHMARK(BM_SampleShots)->Arg(10000)->Arg(100000);

void BM_PhiSweep(benchmark::State &state) {
    const tmsr::ShotSet set = make_shots(10000, 7);
    std::vector<double> grid;
    for (int k = 0; k < 72; ++k) grid.push_back(tmsr::deg_to_rad(5.0 * k));
    const auto jobs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tmsr::phi_sweep(set, grid, tmsr::ThresholdRule::midpoint, jobs));
    }
}
BENCHMARK(BM_PhiSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
