#include "oamris/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "oamris/config.hpp"
#include "oamris/metrics.hpp"
#include "oamris/oam.hpp"
#include "oamris/pipeline.hpp"
#include "oamris/power_opt.hpp"
#include "oamris/ris_opt.hpp"

namespace oamris {

namespace {

SceneGeometry small_scene(int ny, int nz) {
    SceneGeometry g;
    g.ris_ny = ny;
    g.ris_nz = nz;
    return g;
}

// Random synthetic channel set; exercises the algebra without geometry.
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

PowerAllocation random_power(const ModePlan& plan, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    PowerAllocation power;
    power.rho = 0.9;
    power.total_power = 1.0;
    power.p.resize(plan.n_signal());
    for (int i = 0; i < power.p.size(); ++i) power.p(i) = unif(rng);
    power.an_variance = plan.n_an() > 0 ? 0.1 / plan.n_an() : 0.0;
    return power;
}

ModePlan default_plan() { return make_plan({0, 1, -1, -2}, {2, -3, 3, 4}, 3, 3, 0); }

SelftestResult check_dft_unitarity() {
    double worst = 0.0;
    for (int n : {4, 8, 16}) {
        SceneGeometry g = small_scene(1, 1);
        g.n = n;
        const OamBasis basis = build_basis(g);
        worst = std::max(worst, (basis.f.adjoint() * basis.f -
                                 Eigen::MatrixXcd::Identity(n, n))
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    std::ostringstream d;
    d << "max |F^H F - I| = " << worst;
    return {"dft-unitarity", worst < 1e-12, d.str()};
}

SelftestResult check_circulant() {
    const SceneGeometry g = small_scene(1, 1);
    const ChannelSet ch = build_channels_serial(g, ChannelParams{});
    const OamBasis basis = build_basis(g);
    const Eigen::MatrixXcd d = basis.f.adjoint() * ch.h_ab * basis.f;
    double off = 0.0, diag = 0.0;
    for (int r = 0; r < d.rows(); ++r)
        for (int c = 0; c < d.cols(); ++c) (r == c ? diag : off) += std::abs(d(r, c));
    std::ostringstream det;
    det << "off/diag mass = " << off / diag;
    return {"circulant-diagonalization", off < 1e-10 * diag, det.str()};
}

SelftestResult check_dual_route() {
    std::mt19937_64 rng(7);
    const ModePlan plan = default_plan();
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int q = trial % 2 ? 16 : 4;
        SceneGeometry g = small_scene(1, q);
        const OamBasis basis = build_basis(g);
        const ChannelSet ch = random_channels(8, q, rng);
        const PhaseShifts theta = PhaseShifts::random(q, rng());
        const PowerAllocation power = random_power(plan, rng);
        const NoiseConfig noise{0.01, 0.02};
        const RisLinearization linz = build_linearization(ch, basis, plan);
        const Eigen::VectorXd b1 = sinr_bob(ch, basis, plan, power, theta, noise);
        const Eigen::VectorXd b2 = sinr_bob_linearized(linz, power.p, theta, noise.sigma_b2);
        const Eigen::VectorXd e1 = sinr_eve(ch, basis, plan, power, theta, noise);
        const Eigen::VectorXd e2 =
            sinr_eve_linearized(linz, power.p, power.an_variance, theta, noise.sigma_e2);
        worst = std::max(worst, ((b1 - b2).cwiseAbs().cwiseQuotient(b1.cwiseAbs())).maxCoeff());
        worst = std::max(worst, ((e1 - e2).cwiseAbs().cwiseQuotient(e1.cwiseAbs())).maxCoeff());
    }
    std::ostringstream d;
    d << "worst relative gap = " << worst;
    return {"dual-route-sinr", worst < 1e-10, d.str()};
}

SelftestResult check_gradient_fd() {
    std::mt19937_64 rng(11);
    const ModePlan plan = default_plan();
    const int q = 8;
    SceneGeometry g = small_scene(1, q);
    const OamBasis basis = build_basis(g);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const ChannelSet ch = random_channels(8, q, rng);
        const PowerAllocation power = random_power(plan, rng);
        RisProblem prob{build_linearization(ch, basis, plan), power.p, power.an_variance, 0.01,
                        0.02};
        Eigen::VectorXcd theta = PhaseShifts::random(q, rng()).theta;
        const Eigen::VectorXcd grad = prob.euclidean_gradient(theta);
        const double h = 1e-6;
        Eigen::VectorXcd fd(q);
        for (int i = 0; i < q; ++i) {
            Eigen::VectorXcd tp = theta, tm = theta;
            tp(i) += h;
            tm(i) -= h;
            const double dre = (prob.objective(tp) - prob.objective(tm)) / (2 * h);
            tp = theta;
            tm = theta;
            tp(i) += std::complex<double>(0, h);
            tm(i) -= std::complex<double>(0, h);
            const double dim = (prob.objective(tp) - prob.objective(tm)) / (2 * h);
            fd(i) = {dre, dim};
        }
        worst = std::max(worst, (grad - fd).norm() / fd.norm());
    }
    std::ostringstream d;
    d << "worst relative error = " << worst;
    return {"gradient-finite-difference", worst < 1e-5, d.str()};
}

SelftestResult check_manifold_invariants() {
    std::mt19937_64 rng(13);
    const ModePlan plan = default_plan();
    const int q = 16;
    SceneGeometry g = small_scene(4, 4);
    const OamBasis basis = build_basis(g);
    const ChannelSet ch = random_channels(8, q, rng);
    const PowerAllocation power = random_power(plan, rng);
    RisProblem prob{build_linearization(ch, basis, plan), power.p, power.an_variance, 0.01, 0.02};
    const ThetaOptResult res = optimize_theta(prob, PhaseShifts::random(q, 5));
    bool monotone = true;
    for (std::size_t i = 1; i < res.trace.size(); ++i)
        monotone = monotone && res.trace[i] <= res.trace[i - 1] + 1e-10;
    const bool ok = res.max_unit_modulus_error < 1e-12 && res.max_tangency_error < 1e-9 &&
                    res.min_armijo_slack >= 0.0 && monotone;
    std::ostringstream d;
    d << "unit-modulus err " << res.max_unit_modulus_error << ", tangency err "
      << res.max_tangency_error << ", monotone " << (monotone ? "yes" : "no");
    return {"manifold-invariants", ok, d.str()};
}

SelftestResult check_p4_oracle() {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    double worst = 0.0;
    for (int seed = 0; seed < 5; ++seed) {
        PowerSubproblem sub;
        sub.bob_gain.resize(2, 2);
        sub.eve_gain.resize(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                sub.bob_gain(i, j) = unif(rng);
                sub.eve_gain(i, j) = 0.3 * unif(rng);
            }
        sub.eve_an = Eigen::VectorXd::Constant(2, 0.1);
        sub.budget = 0.9;
        sub.floor = 1e-3;
        const Eigen::VectorXd p0 = Eigen::VectorXd::Constant(2, sub.budget / 2);
        const AuxMultipliers t = update_multipliers(sub, p0);
        const Eigen::VectorXd p = solve_p4(sub, t);
        const auto obj = [&](double p1, double p2) {
            Eigen::Vector2d pp(p1, p2);
            return p3_objective(sub, pp, t);
        };
        // 2-D grid oracle over the feasible triangle.
        const double step = sub.budget / 2000.0;
        double best = -1e300;
        for (double p1 = sub.floor; p1 <= sub.budget; p1 += step)
            for (double p2 = sub.floor; p1 + p2 <= sub.budget; p2 += step)
                best = std::max(best, obj(p1, p2));
        const double mine = obj(p(0), p(1));
        worst = std::max(worst, (best - mine) / std::abs(best));
    }
    std::ostringstream d;
    d << "worst relative objective gap = " << worst;
    return {"p4-grid-oracle", worst < 1e-3, d.str()};
}

SelftestResult check_k_formula() {
    const auto all = all_combinations({0, 1, -1, -2}, {2, -3, 3, 4}, 3, 3);
    const std::int64_t k = combination_count({0, 1, -1, -2}, {2, -3, 3, 4}, 3, 3);
    const ModePlan plan = default_plan();
    const bool ok = all.size() == 12 && k == 8 && plan.combinations == 8 &&
                    std::abs(plan.index_bits() - 3.0) == 0.0;
    std::ostringstream d;
    d << "total " << all.size() << ", K = " << k;
    return {"index-combination-count", ok, d.str()};
}

SelftestResult check_lemma() {
    // -ln x = max_t (-t x + ln t + 1) with the maximum at t = 1/x.
    double worst = 0.0;
    for (double x : {0.1, 1.0, 10.0}) {
        double best = -1e300, best_t = 0.0;
        for (double t = 1e-4; t < 20.0; t += 1e-4) {
            const double v = -t * x + std::log(t) + 1.0;
            if (v > best) {
                best = v;
                best_t = t;
            }
        }
        worst = std::max(worst, std::abs(best + std::log(x)));
        worst = std::max(worst, std::abs(best_t - 1.0 / x) * x);
    }
    std::ostringstream d;
    d << "worst sampled deviation = " << worst;
    return {"multiplier-identity", worst < 1e-3, d.str()};
}

SelftestResult check_dbm() {
    const bool ok = dbm_to_watt(30.0) == 1.0 &&
                    std::abs(watt_to_dbm(dbm_to_watt(-20.0)) + 20.0) < 1e-12 &&
                    std::abs(dbm_to_watt(-20.0) - 1e-5) < 1e-17;
    return {"dbm-roundtrip", ok, "30 dBm = 1 W, -20 dBm = 1e-5 W"};
}

SelftestResult check_tangent_projection() {
    std::mt19937_64 rng(19);
    std::normal_distribution<double> randn(0.0, 1.0);
    const int q = 12;
    const Eigen::VectorXcd theta = PhaseShifts::random(q, 3).theta;
    Eigen::VectorXcd v(q);
    for (int i = 0; i < q; ++i) v(i) = {randn(rng), randn(rng)};
    const Eigen::VectorXcd p1 = project_tangent(theta, v);
    const Eigen::VectorXcd p2 = project_tangent(theta, p1);
    const double idem = (p2 - p1).norm();
    const double tang = p1.cwiseProduct(theta.conjugate()).real().cwiseAbs().maxCoeff();
    std::ostringstream d;
    d << "idempotence " << idem << ", tangency " << tang;
    return {"tangent-projection", idem < 1e-12 && tang < 1e-12, d.str()};
}

SelftestResult check_ao_monotone() {
    bool ok = true;
    for (std::uint64_t seed : {1ULL, 2ULL}) {
        SceneGeometry g = small_scene(4, 4);
        const ChannelSet ch = build_channels(g, ChannelParams{});
        const OamBasis basis = build_basis(g);
        SchemeConfig cfg;
        cfg.seed = seed;
        const RunResult res =
            run_rmcg_ao(ch, basis, default_plan(), NoiseConfig{}, PowerBudget{}, cfg);
        for (std::size_t i = 1; i < res.sr_trace.size(); ++i)
            ok = ok && res.sr_trace[i] >= res.sr_trace[i - 1] - 1e-6;
        ok = ok && !res.stagnated;
    }
    return {"ao-monotonicity", ok, "secrecy trace nondecreasing on 2 seeds"};
}

}  // namespace

std::vector<SelftestResult> selftest_checks() {
    return {check_dft_unitarity(), check_circulant(),   check_dual_route(),
            check_gradient_fd(),   check_manifold_invariants(), check_p4_oracle(),
            check_k_formula(),     check_lemma(),        check_dbm(),
            check_tangent_projection(), check_ao_monotone()};
}

bool run_selftest() {
    bool all = true;
    for (const SelftestResult& r : selftest_checks()) {
        std::printf("[%s] %-28s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        all = all && r.passed;
    }
    std::printf("%s\n", all ? "selftest: all checks passed" : "selftest: FAILURES detected");
    return all;
}

}  // namespace oamris
