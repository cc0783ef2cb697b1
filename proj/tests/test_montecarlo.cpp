#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oamris/montecarlo.hpp"
#include "oamris/pipeline.hpp"

using namespace oamris;

namespace {

const std::vector<int> kLow{0, 1, -1, -2};
const std::vector<int> kHigh{2, -3, 3, 4};

struct Fixture {
    SceneGeometry scene;
    ChannelSet ch;
    OamBasis basis;
    ModePlan plan = make_plan(kLow, kHigh, 3, 3, 0);
    PowerAllocation power;
    PhaseShifts theta;
    NoiseConfig noise;

    explicit Fixture(int ny = 5, int nz = 6) {
        scene.ris_ny = ny;
        scene.ris_nz = nz;
        ch = build_channels(scene, ChannelParams{});
        basis = build_basis(scene);
        power = PowerAllocation::equal_split(plan, 0.9, 1.0, 1e-4);
        theta = PhaseShifts::all_ones(ch.q());
    }
};

MonteCarloConfig quick_mc(std::int64_t trials, std::vector<double> grid) {
    MonteCarloConfig mc;
    mc.trials = trials;
    mc.snr_grid_db = std::move(grid);
    mc.seed = 99;
    return mc;
}

}  // namespace

TEST_CASE("wilson interval brackets the point estimate") {
    const auto ci = wilson_interval(50, 1000);
    CHECK(ci.low < 0.05);
    CHECK(ci.high > 0.05);
    CHECK(ci.low > 0.03);
    CHECK(ci.high < 0.07);
    const auto zero = wilson_interval(0, 1000);
    CHECK(zero.low == 0.0);
    CHECK(zero.high > 0.0);
    CHECK(zero.high < 0.005);
    const auto all = wilson_interval(1000, 1000);
    CHECK(all.high == 1.0);
    CHECK(all.low < 1.0);
}

TEST_CASE("near-noiseless single-mode link is error free at bob") {
    Fixture f;
    f.plan = make_plan(kLow, kHigh, 1, 3, 0);
    f.power = PowerAllocation::equal_split(f.plan, 1.0, 1.0, 1e-4);  // no AN power
    f.noise.sigma_b2 = 1e-30;
    const BerCurve curve =
        simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, quick_mc(2000, {10.0}));
    CHECK(curve.points.at(0).bit_errors_bob == 0);
    CHECK(curve.points.at(0).ber_bob() == 0.0);
}

TEST_CASE("a receiver reduced to guessing sits at one half") {
    // At -100 dB SNR Eve's equalizer output is noise; detected bits are
    // independent of the transmitted ones, so BER converges to 0.5.
    const Fixture f;
    const std::int64_t trials = 20000;
    const BerCurve curve =
        simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, quick_mc(trials, {-100.0}));
    const BerPoint& p = curve.points.at(0);
    const double sigma = std::sqrt(0.25 / static_cast<double>(p.total_bits));
    CHECK(p.ber_eve() > 0.5 - 3 * sigma);
    CHECK(p.ber_eve() < 0.5 + 3 * sigma);
}

TEST_CASE("transmit energy matches the configured budget split") {
    const Fixture f;
    const BerCurve curve =
        simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, quick_mc(20000, {10.0}));
    const double expected = f.power.p.sum() + f.plan.n_an() * f.power.an_variance;
    CHECK(curve.points.at(0).mean_tx_power ==
          doctest::Approx(expected).epsilon(0.01));

    MonteCarloConfig no_an = quick_mc(20000, {10.0});
    no_an.include_an = false;
    const BerCurve bare =
        simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, no_an);
    CHECK(bare.points.at(0).mean_tx_power == doctest::Approx(f.power.p.sum()).epsilon(0.01));
}

TEST_CASE("fixed seeds reproduce counts exactly and chunking does not matter") {
    const Fixture f;
    const MonteCarloConfig mc = quick_mc(5000, {0.0, 10.0});
    const BerCurve a = simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, mc);
    const BerCurve b = simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, mc);
    const BerCurve serial =
        simulate_ber_serial(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, mc);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].bit_errors_bob == b.points[i].bit_errors_bob);
        CHECK(a.points[i].bit_errors_eve == b.points[i].bit_errors_eve);
        CHECK(a.points[i].bit_errors_bob == serial.points[i].bit_errors_bob);
        CHECK(a.points[i].bit_errors_eve == serial.points[i].bit_errors_eve);
    }

    MonteCarloConfig other = mc;
    other.seed = mc.seed + 1;
    const BerCurve c = simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, other);
    CHECK(a.points[0].bit_errors_eve != c.points[0].bit_errors_eve);
}

TEST_CASE("artificial noise hurts eve but not bob") {
    // Optimized operating point, matching how the BER experiment runs.
    const Fixture f(5, 8);
    SchemeConfig cfg;
    const PowerBudget budget;
    const RunResult opt =
        run_baseline(Scheme::proposed, f.ch, f.basis, f.plan, f.noise, budget, cfg);
    PowerAllocation power = f.power;
    power.p = opt.p;

    MonteCarloConfig with_an = quick_mc(30000, {10.0});
    MonteCarloConfig no_an = with_an;
    no_an.include_an = false;
    const BerCurve jammed =
        simulate_ber(f.ch, f.basis, f.plan, power, opt.theta, f.noise, with_an);
    const BerCurve clear = simulate_ber(f.ch, f.basis, f.plan, power, opt.theta, f.noise, no_an);

    const BerPoint& pj = jammed.points.at(0);
    const BerPoint& pc = clear.points.at(0);
    CHECK(pj.ber_eve() > pc.ber_eve());
    CHECK(pj.ber_eve() > pj.ber_bob());
    // AN is pre-known to Bob, so his error count is unaffected by jamming
    CHECK(pj.ci_bob().high < pj.ci_eve().low);
}

TEST_CASE("eve improves with her own snr while bob stays put") {
    const Fixture f;
    MonteCarloConfig mc = quick_mc(20000, {-10.0, 0.0, 10.0, 20.0, 30.0});
    mc.include_an = false;  // isolate the noise effect
    const BerCurve curve = simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, mc);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        // nonincreasing within the confidence bands
        CHECK(curve.points[i].ci_eve().low <= curve.points[i - 1].ci_eve().high + 1e-12);
        // Bob's noise never changes with the sweep
        CHECK(curve.points[i].ci_bob().low <= curve.points[i - 1].ci_bob().high + 1e-12);
        CHECK(curve.points[i].ci_bob().high >= curve.points[i - 1].ci_bob().low - 1e-12);
    }
}

TEST_CASE("zf equalizer is accepted and differs from lmmse") {
    const Fixture f;
    MonteCarloConfig mc = quick_mc(5000, {10.0});
    mc.eve_receiver = EveReceiver::zf;
    const BerCurve zf = simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, mc);
    mc.eve_receiver = EveReceiver::lmmse;
    const BerCurve lmmse = simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, mc);
    CHECK(zf.points.at(0).total_bits == lmmse.points.at(0).total_bits);
    CHECK(zf.points.at(0).bit_errors_eve != lmmse.points.at(0).bit_errors_eve);
}

TEST_CASE("configuration validation") {
    const Fixture f;
    MonteCarloConfig mc = quick_mc(0, {10.0});
    CHECK_THROWS_AS(
        (void)simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, mc),
        std::invalid_argument);
    mc = quick_mc(10, {});
    CHECK_THROWS_AS(
        (void)simulate_ber(f.ch, f.basis, f.plan, f.power, f.theta, f.noise, mc),
        std::invalid_argument);
}
