// Serial reference vs OpenMP kernels: channel synthesis and BER trials.
#include <benchmark/benchmark.h>

#include "oamris/channel.hpp"
#include "oamris/montecarlo.hpp"
#include "oamris/oam.hpp"

namespace {

oamris::SceneGeometry bench_scene(int ny, int nz) {
    oamris::SceneGeometry g;
    g.ris_ny = ny;
    g.ris_nz = nz;
    return g;
}

void bm_channels_serial(benchmark::State& state) {
    const auto g = bench_scene(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    const oamris::ChannelParams params;
    for (auto _ : state) {
        auto ch = oamris::build_channels_serial(g, params);
        benchmark::DoNotOptimize(ch.h_ar.data());
    }
}

void bm_channels_openmp(benchmark::State& state) {
    const auto g = bench_scene(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    const oamris::ChannelParams params;
    for (auto _ : state) {
        auto ch = oamris::build_channels(g, params);
        benchmark::DoNotOptimize(ch.h_ar.data());
    }
}

struct BerFixture {
    oamris::SceneGeometry scene = bench_scene(10, 15);
    oamris::ChannelSet ch = oamris::build_channels(scene, oamris::ChannelParams{});
    oamris::OamBasis basis = oamris::build_basis(scene);
    oamris::ModePlan plan = oamris::make_plan({0, 1, -1, -2}, {2, -3, 3, 4}, 3, 3, 0);
    oamris::PowerAllocation power = oamris::PowerAllocation::equal_split(plan, 0.9, 1.0, 1e-4);
    oamris::PhaseShifts theta = oamris::PhaseShifts::all_ones(ch.q());
    oamris::NoiseConfig noise;
};

void bm_ber_serial(benchmark::State& state) {
    const BerFixture f;
    oamris::MonteCarloConfig mc;
    mc.trials = state.range(0);
    mc.snr_grid_db = {10.0};
    for (auto _ : state) {
        auto curve = oamris::simulate_ber_serial(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, mc);
        benchmark::DoNotOptimize(curve.points.data());
    }
}

void bm_ber_openmp(benchmark::State& state) {
    const BerFixture f;
    oamris::MonteCarloConfig mc;
    mc.trials = state.range(0);
    mc.snr_grid_db = {10.0};
    for (auto _ : state) {
        auto curve = oamris::simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, mc);
        benchmark::DoNotOptimize(curve.points.data());
    }
}

}  // namespace

BENCHMARK(bm_channels_serial)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_channels_openmp)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_ber_serial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_ber_openmp)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
