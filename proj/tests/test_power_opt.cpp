#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oamris/power_opt.hpp"

using namespace oamris;

namespace {

PowerSubproblem random_subproblem(std::mt19937_64& rng, int n = 2, double eve_scale = 0.3) {
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    PowerSubproblem sub;
    sub.bob_gain.resize(n, n);
    sub.eve_gain.resize(n, n);
    sub.eve_an.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            sub.bob_gain(i, j) = unif(rng);
            sub.eve_gain(i, j) = eve_scale * unif(rng);
        }
        sub.eve_an(i) = 0.1 * unif(rng);
    }
    sub.budget = 0.9;
    sub.floor = 1e-3;
    return sub;
}

// Surrogate term for one mode; mirrors the multiplier identity.
double phi_bob(const PowerSubproblem& sub, const Eigen::VectorXd& p, int i, double t) {
    Eigen::VectorXd off = sub.bob_gain.row(i).transpose();
    off(i) = 0.0;
    return std::log(1.0 + sub.bob_gain.row(i).dot(p)) - t * (1.0 + off.dot(p)) + std::log(t) +
           1.0;
}

}  // namespace

TEST_CASE("multiplier closed form") {
    PowerSubproblem sub;
    sub.bob_gain.resize(2, 2);
    sub.eve_gain = Eigen::MatrixXd::Zero(2, 2);
    sub.eve_an = Eigen::VectorXd::Zero(2);
    sub.budget = 2.0;
    sub.floor = 0.0;

    // interference-free row: t_bob = 1
    sub.bob_gain << 5.0, 0.0, 0.0, 5.0;
    Eigen::VectorXd p = Eigen::VectorXd::Ones(2);
    CHECK(update_multipliers(sub, p).t_bob(0) == doctest::Approx(1.0));

    // cross gain 3 at unit power: t_bob = 1/(1+3)
    sub.bob_gain << 5.0, 3.0, 3.0, 5.0;
    CHECK(update_multipliers(sub, p).t_bob(0) == doctest::Approx(0.25));

    // Eve side picks up the AN constant
    sub.eve_gain << 1.0, 1.0, 1.0, 1.0;
    sub.eve_an << 1.0, 1.0;
    CHECK(update_multipliers(sub, p).t_eve(0) == doctest::Approx(1.0 / 4.0));
}

TEST_CASE("multipliers maximize the per-mode surrogate") {
    std::mt19937_64 rng(3);
    const PowerSubproblem sub = random_subproblem(rng);
    const Eigen::VectorXd p = Eigen::VectorXd::Constant(2, 0.3);
    const AuxMultipliers t = update_multipliers(sub, p);
    for (int i = 0; i < 2; ++i) {
        const double at_opt = phi_bob(sub, p, i, t.t_bob(i));
        CHECK(phi_bob(sub, p, i, t.t_bob(i) + 0.01) < at_opt);
        CHECK(phi_bob(sub, p, i, t.t_bob(i) - 0.01) < at_opt);
    }
}

TEST_CASE("multiplier identity against log sampling") {
    // -ln x = max_t(-t x + ln t + 1), attained at t = 1/x
    for (double x : {0.1, 1.0, 10.0}) {
        double best = -1e300, best_t = 0.0;
        for (double t = 1e-4; t <= 25.0; t += 1e-4) {
            const double v = -t * x + std::log(t) + 1.0;
            if (v > best) {
                best = v;
                best_t = t;
            }
        }
        CHECK(best == doctest::Approx(-std::log(x)).epsilon(1e-4));
        CHECK(best_t * x == doctest::Approx(1.0).epsilon(1e-2));
    }
}

TEST_CASE("surrogate equals the secrecy objective at optimal multipliers") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const PowerSubproblem sub = random_subproblem(rng, 3);
        Eigen::VectorXd p(3);
        std::uniform_real_distribution<double> unif(sub.floor, sub.budget / 3);
        for (int i = 0; i < 3; ++i) p(i) = unif(rng);
        const AuxMultipliers t = update_multipliers(sub, p);
        CHECK(p3_objective(sub, p, t) ==
              doctest::Approx(std::numbers::ln2 * secrecy_objective(sub, p)).epsilon(1e-9));
    }
}

TEST_CASE("feasible-region projection") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> randn(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        Eigen::VectorXd y(4);
        for (int i = 0; i < 4; ++i) y(i) = randn(rng);
        const Eigen::VectorXd p = project_feasible(y, 1.0, 0.01);
        CHECK(p.sum() <= 1.0 + 1e-9);
        CHECK(p.minCoeff() >= 0.01 - 1e-12);
    }
    // a feasible point projects to itself
    const Eigen::VectorXd inside = Eigen::VectorXd::Constant(4, 0.2);
    CHECK((project_feasible(inside, 1.0, 0.01) - inside).norm() < 1e-12);
    CHECK_THROWS_AS((void)project_feasible(inside, 0.03, 0.01), std::invalid_argument);
}

TEST_CASE("symmetric two-mode instance splits the budget equally") {
    PowerSubproblem sub;
    sub.bob_gain.resize(2, 2);
    sub.bob_gain << 2.0, 0.5, 0.5, 2.0;
    sub.eve_gain.resize(2, 2);
    sub.eve_gain << 0.4, 0.2, 0.2, 0.4;
    sub.eve_an = Eigen::VectorXd::Constant(2, 0.1);
    sub.budget = 0.9;
    sub.floor = 1e-3;
    const AuxMultipliers t = update_multipliers(sub, Eigen::VectorXd::Constant(2, 0.45));
    const Eigen::VectorXd p = solve_p4(sub, t);
    CHECK(p(0) == doctest::Approx(0.45).epsilon(1e-6));
    CHECK(p(1) == doctest::Approx(0.45).epsilon(1e-6));
}

TEST_CASE("inner solver matches a 2-d grid oracle") {
    std::mt19937_64 rng(23);
    for (int seed = 0; seed < 8; ++seed) {
        const PowerSubproblem sub = random_subproblem(rng);
        const AuxMultipliers t =
            update_multipliers(sub, Eigen::VectorXd::Constant(2, sub.budget / 2));
        const Eigen::VectorXd p = solve_p4(sub, t);
        CHECK(p4_stationarity(sub, t, p) < 1e-7);
        CHECK(p.sum() <= sub.budget + 1e-9);
        CHECK(p.minCoeff() >= sub.floor - 1e-9);

        const double step = sub.budget / 2000.0;
        double best = -1e300;
        for (double p1 = sub.floor; p1 <= sub.budget; p1 += step)
            for (double p2 = sub.floor; p1 + p2 <= sub.budget; p2 += step) {
                Eigen::Vector2d pp(p1, p2);
                best = std::max(best, p3_objective(sub, pp, t));
            }
        const double mine = p3_objective(sub, p, t);
        CHECK(mine >= best - 1e-3 * std::abs(best));
    }
}

TEST_CASE("a strongly adverse mode is pinned at the floor") {
    std::mt19937_64 rng(29);
    PowerSubproblem sub = random_subproblem(rng);
    // mode 1 barely helps Bob and strongly helps Eve
    sub.bob_gain(1, 1) = 0.01;
    sub.eve_gain(1, 1) = 5.0;
    const AuxMultipliers t = update_multipliers(sub, Eigen::VectorXd::Constant(2, sub.budget / 2));
    const Eigen::VectorXd p = solve_p4(sub, t);
    CHECK(p(1) == doctest::Approx(sub.floor).epsilon(1e-6));

    // oracle confirms the floor is optimal
    const double step = sub.budget / 2000.0;
    double best = -1e300, best_p2 = 0.0;
    for (double p1 = sub.floor; p1 <= sub.budget; p1 += step)
        for (double p2 = sub.floor; p1 + p2 <= sub.budget; p2 += step) {
            Eigen::Vector2d pp(p1, p2);
            const double v = p3_objective(sub, pp, t);
            if (v > best) {
                best = v;
                best_p2 = p2;
            }
        }
    CHECK(best_p2 == doctest::Approx(sub.floor).epsilon(1e-2));
}

TEST_CASE("alternating rounds are monotone and settle") {
    std::mt19937_64 rng(31);
    for (int seed = 0; seed < 100; ++seed) {
        const PowerSubproblem sub = random_subproblem(rng, 3);
        const Eigen::VectorXd p0 = Eigen::VectorXd::Constant(3, sub.budget / 3);
        const PowerOptResult res = optimize_power(sub, p0);
        for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
            CHECK(res.objective_trace[i] >= res.objective_trace[i - 1] - 1e-9);

        // converged: one more round moves the objective by less than the tol
        const AuxMultipliers t = update_multipliers(sub, res.p);
        const Eigen::VectorXd p_extra = solve_p4(sub, t, res.p);
        CHECK(std::abs(p3_objective(sub, p_extra, t) - res.objective_trace.back()) < 1e-5);
    }
}

TEST_CASE("single-mode problem saturates the budget when the slope is positive") {
    PowerSubproblem sub;
    sub.bob_gain = Eigen::MatrixXd::Constant(1, 1, 4.0);
    sub.eve_gain = Eigen::MatrixXd::Constant(1, 1, 0.2);
    sub.eve_an = Eigen::VectorXd::Constant(1, 0.05);
    sub.budget = 0.9;
    sub.floor = 1e-3;
    const PowerOptResult res = optimize_power(sub, Eigen::VectorXd::Constant(1, 0.1));
    CHECK(res.p(0) == doctest::Approx(sub.budget).epsilon(1e-7));

    // 1-d oracle over the feasible segment
    double best = -1e300, best_p = 0.0;
    const AuxMultipliers t = update_multipliers(sub, res.p);
    for (double p = sub.floor; p <= sub.budget; p += sub.budget / 20000.0) {
        Eigen::VectorXd pp = Eigen::VectorXd::Constant(1, p);
        const double v = p3_objective(sub, pp, t);
        if (v > best) {
            best = v;
            best_p = p;
        }
    }
    CHECK(best_p == doctest::Approx(sub.budget).epsilon(1e-3));
}

TEST_CASE("infeasible budget is rejected") {
    PowerSubproblem sub;
    sub.bob_gain = Eigen::MatrixXd::Ones(3, 3);
    sub.eve_gain = Eigen::MatrixXd::Ones(3, 3);
    sub.eve_an = Eigen::VectorXd::Zero(3);
    sub.budget = 0.01;
    sub.floor = 0.02;  // 3 * floor > budget
    CHECK_THROWS_AS(sub.validate(), std::invalid_argument);
    const AuxMultipliers t{Eigen::VectorXd::Ones(3), Eigen::VectorXd::Ones(3)};
    CHECK_THROWS_AS((void)solve_p4(sub, t), std::invalid_argument);
}
