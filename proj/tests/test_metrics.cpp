#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oamris/channel.hpp"
#include "oamris/metrics.hpp"

using namespace oamris;

namespace {

const std::vector<int> kLow{0, 1, -1, -2};
const std::vector<int> kHigh{2, -3, 3, 4};

SceneGeometry scene(int ny = 2, int nz = 2) {
    SceneGeometry g;
    g.ris_ny = ny;
    g.ris_nz = nz;
    return g;
}

ChannelSet random_channels(int n, int q, std::mt19937_64& rng) {
    std::normal_distribution<double> randn(0.0, 1.0);
    const auto fill = [&](int rows, int cols) {
        Eigen::MatrixXcd m(rows, cols);
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r) m(r, c) = {randn(rng), randn(rng)};
        return m;
    };
    ChannelSet ch;
    ch.h_ab = fill(n, n);
    ch.h_ar = fill(q, n);
    ch.h_rb = fill(n, q);
    ch.h_ae = fill(n, n);
    ch.h_re = fill(n, q);
    return ch;
}

PowerAllocation power_for(const ModePlan& plan, double rho = 0.9, double total = 1.0) {
    return PowerAllocation::equal_split(plan, rho, total, 1e-4);
}

// Entry-by-entry evaluation of the composite coefficient, independent of the
// production matrix algebra.
std::complex<double> brute_coefficient(const ChannelSet& ch, const OamBasis& basis,
                                       const PhaseShifts& theta, int row_mode, int col_mode) {
    const int n = ch.n(), q = ch.q();
    const Eigen::VectorXcd fr = basis.column(row_mode), fc = basis.column(col_mode);
    std::complex<double> acc = 0.0;
    for (int m = 0; m < n; ++m)
        for (int c = 0; c < n; ++c) {
            std::complex<double> h = ch.h_ab(m, c);
            for (int k = 0; k < q; ++k)
                h += ch.h_rb(m, k) * std::conj(theta.theta(k)) * ch.h_ar(k, c);
            acc += std::conj(fr(m)) * h * fc(c);
        }
    return acc;
}

}  // namespace

TEST_CASE("single signal mode has no interference term") {
    const SceneGeometry g = scene();
    const OamBasis basis = build_basis(g);
    const ChannelSet ch = build_channels_serial(g, ChannelParams{});
    const ModePlan plan = make_plan(kLow, kHigh, 1, 3, 0);
    const PowerAllocation power = power_for(plan);
    const PhaseShifts theta = PhaseShifts::random(ch.q(), 3);
    const NoiseConfig noise;

    const Eigen::VectorXd gamma = sinr_bob(ch, basis, plan, power, theta, noise);
    REQUIRE(gamma.size() == 1);
    const std::complex<double> a =
        brute_coefficient(ch, basis, theta, 0, 0) / std::sqrt(noise.sigma_b2);
    CHECK(gamma(0) == doctest::Approx(power.p(0) * std::norm(a)).epsilon(1e-12));
}

TEST_CASE("zero power means zero SINR everywhere") {
    const SceneGeometry g = scene();
    const OamBasis basis = build_basis(g);
    const ChannelSet ch = build_channels_serial(g, ChannelParams{});
    const ModePlan plan = make_plan(kLow, kHigh, 3, 3, 0);
    PowerAllocation power = power_for(plan);
    power.p.setZero();
    const PhaseShifts theta = PhaseShifts::all_ones(ch.q());
    CHECK(sinr_bob(ch, basis, plan, power, theta, NoiseConfig{}).maxCoeff() == 0.0);
    CHECK(sinr_eve(ch, basis, plan, power, theta, NoiseConfig{}).maxCoeff() == 0.0);
}

TEST_CASE("direct route matches brute-force loops") {
    std::mt19937_64 rng(42);
    const SceneGeometry g = scene(2, 4);
    const OamBasis basis = build_basis(g);
    const ChannelSet ch = random_channels(8, 8, rng);
    const ModePlan plan = make_plan(kLow, kHigh, 3, 3, 2);
    const PowerAllocation power = power_for(plan);
    const PhaseShifts theta = PhaseShifts::random(8, 9);
    const NoiseConfig noise{0.02, 0.05};

    const Eigen::VectorXd gamma = sinr_bob(ch, basis, plan, power, theta, noise);
    for (int i = 0; i < plan.n_signal(); ++i) {
        double interference = 0.0;
        for (int j = 0; j < plan.n_signal(); ++j) {
            if (j == i) continue;
            const std::complex<double> a =
                brute_coefficient(ch, basis, theta, plan.signal_modes[i], plan.signal_modes[j]) /
                std::sqrt(noise.sigma_b2);
            interference += power.p(j) * std::norm(a);
        }
        const std::complex<double> a_self =
            brute_coefficient(ch, basis, theta, plan.signal_modes[i], plan.signal_modes[i]) /
            std::sqrt(noise.sigma_b2);
        const double expected = power.p(i) * std::norm(a_self) / (interference + 1.0);
        CHECK(gamma(i) == doctest::Approx(expected).epsilon(1e-11));
    }
}

TEST_CASE("dual routes agree to 1e-10 relative") {
    std::mt19937_64 rng(1234);
    const ModePlan plan = make_plan(kLow, kHigh, 3, 3, 1);
    for (int trial = 0; trial < 25; ++trial) {
        const int q = trial % 2 ? 16 : 4;
        const SceneGeometry g = scene(1, q);
        const OamBasis basis = build_basis(g);
        const ChannelSet ch = random_channels(8, q, rng);
        const PhaseShifts theta = PhaseShifts::random(q, rng());
        PowerAllocation power = power_for(plan);
        std::uniform_real_distribution<double> unif(0.05, 0.4);
        for (int i = 0; i < power.p.size(); ++i) power.p(i) = unif(rng);
        const NoiseConfig noise{0.01, 0.03};

        const RisLinearization linz = build_linearization(ch, basis, plan);
        const Eigen::VectorXd b1 = sinr_bob(ch, basis, plan, power, theta, noise);
        const Eigen::VectorXd b2 = sinr_bob_linearized(linz, power.p, theta, noise.sigma_b2);
        const Eigen::VectorXd e1 = sinr_eve(ch, basis, plan, power, theta, noise);
        const Eigen::VectorXd e2 =
            sinr_eve_linearized(linz, power.p, power.an_variance, theta, noise.sigma_e2);
        for (int i = 0; i < plan.n_signal(); ++i) {
            CHECK(std::abs(b1(i) - b2(i)) <= 1e-10 * std::abs(b1(i)));
            CHECK(std::abs(e1(i) - e2(i)) <= 1e-10 * std::abs(e1(i)));
        }
    }
}

TEST_CASE("linearization reproduces the composite coefficients") {
    std::mt19937_64 rng(5);
    const int q = 8;
    const SceneGeometry g = scene(2, 4);
    const OamBasis basis = build_basis(g);
    const ChannelSet ch = random_channels(8, q, rng);
    const ModePlan plan = make_plan(kLow, kHigh, 3, 3, 0);
    const PhaseShifts theta = PhaseShifts::random(q, 77);
    const NoiseConfig noise{0.01, 0.04};
    const RisLinearization linz = build_linearization(ch, basis, plan);

    // omega + theta^H mu must equal sigma_B * a for every signal pair
    for (int i = 0; i < plan.n_signal(); ++i)
        for (int j = 0; j < plan.n_signal(); ++j) {
            const std::complex<double> lhs =
                linz.omega(i, j) + theta.theta.dot(linz.mu[i].col(j));
            const std::complex<double> a = brute_coefficient(
                ch, basis, theta, plan.signal_modes[i], plan.signal_modes[j]);
            CHECK(std::abs(lhs - a) <= 1e-10 * std::abs(a));
        }

    // zeta + theta^H eta must equal sigma_E * b, including the AN columns
    for (int i = 0; i < plan.n_signal(); ++i) {
        const int row = basis.column_of(plan.signal_modes[i]);
        for (int j = 0; j < linz.n_columns(); ++j) {
            const std::complex<double> lhs =
                linz.zeta(i, j) + theta.theta.dot(linz.eta[i].col(j));
            const Eigen::RowVectorXcd eve_row =
                ch.h_ae.row(row) +
                ch.h_re.row(row) * theta.theta.conjugate().asDiagonal() * ch.h_ar;
            const std::complex<double> b = (eve_row * basis.column(linz.col_modes[j]))(0);
            CHECK(std::abs(lhs - b) <= 1e-10 * std::abs(b));
        }
    }
}

TEST_CASE("stronger AN monotonically suppresses Eve") {
    std::mt19937_64 rng(8);
    const SceneGeometry g = scene(2, 4);
    const OamBasis basis = build_basis(g);
    const ChannelSet ch = random_channels(8, 8, rng);
    const ModePlan plan = make_plan(kLow, kHigh, 3, 3, 0);
    const PhaseShifts theta = PhaseShifts::random(8, 4);
    PowerAllocation power = power_for(plan);
    const NoiseConfig noise;

    const double base = sinr_eve(ch, basis, plan, power, theta, noise).sum();
    power.an_variance *= 10.0;
    const double x10 = sinr_eve(ch, basis, plan, power, theta, noise).sum();
    power.an_variance *= 10.0;
    const double x100 = sinr_eve(ch, basis, plan, power, theta, noise).sum();
    CHECK(x10 < base);
    CHECK(x100 < x10);
}

TEST_CASE("full signal fraction removes the AN term") {
    const SceneGeometry g = scene();
    const OamBasis basis = build_basis(g);
    const ChannelSet ch = build_channels_serial(g, ChannelParams{});
    const ModePlan plan = make_plan(kLow, kHigh, 3, 3, 0);
    const PhaseShifts theta = PhaseShifts::all_ones(ch.q());
    const NoiseConfig noise;

    PowerAllocation with_rho_1 = PowerAllocation::equal_split(plan, 1.0, 1.0, 1e-4);
    CHECK(with_rho_1.an_variance == 0.0);
    // AN variance zero: Eve SINR equals the AN-free evaluation exactly
    PowerAllocation no_an = with_rho_1;
    no_an.an_variance = 0.0;
    CHECK(sinr_eve(ch, basis, plan, with_rho_1, theta, noise) ==
          sinr_eve(ch, basis, plan, no_an, theta, noise));
}

TEST_CASE("rates and secrecy bookkeeping") {
    // K = 8 contributes exactly three index bits
    const Eigen::VectorXd zero3 = Eigen::VectorXd::Zero(3);
    const RateReport all_zero = rates_and_secrecy(zero3, zero3, 8);
    CHECK(all_zero.rate_bob_signal == 0.0);
    CHECK(all_zero.rate_eve == 0.0);
    CHECK(all_zero.rate_bob == doctest::Approx(3.0));
    CHECK(all_zero.secrecy == doctest::Approx(3.0));

    const Eigen::VectorXd ones3 = Eigen::VectorXd::Ones(3);
    const RateReport r = rates_and_secrecy(ones3, zero3, 1);
    CHECK(r.rate_bob == doctest::Approx(3.0));
    CHECK(r.secrecy == doctest::Approx(3.0));
    CHECK(r.secrecy_clamped == doctest::Approx(3.0));

    const RateReport negative = rates_and_secrecy(zero3, ones3, 1);
    CHECK(negative.secrecy == doctest::Approx(-3.0));
    CHECK(negative.secrecy_clamped == 0.0);
}

TEST_CASE("validation of phases, powers, and dimensions") {
    PhaseShifts bad = PhaseShifts::all_ones(4);
    bad.theta(2) = {0.5, 0.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_NOTHROW(PhaseShifts::random(16, 3).validate());

    const ModePlan plan = make_plan(kLow, kHigh, 3, 3, 0);
    PowerAllocation power = power_for(plan);
    CHECK_NOTHROW(power.validate());
    power.p(0) = power.budget() * 2;
    CHECK_THROWS_AS(power.validate(), std::invalid_argument);
    power = power_for(plan);
    power.p(1) = 0.0;
    power.floor = 1e-3;
    CHECK_THROWS_AS(power.validate(), std::invalid_argument);

    const SceneGeometry g = scene();
    const OamBasis basis = build_basis(g);
    const ChannelSet ch = build_channels_serial(g, ChannelParams{});
    const PhaseShifts theta = PhaseShifts::all_ones(ch.q() + 1);  // wrong length
    CHECK_THROWS_AS((void)sinr_bob(ch, basis, plan, power_for(plan), theta, NoiseConfig{}),
                    std::invalid_argument);
}
