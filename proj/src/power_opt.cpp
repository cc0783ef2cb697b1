#include "oamris/power_opt.hpp"

#include <cmath>
#include <stdexcept>

namespace oamris {

namespace {

constexpr double kStationarityTol = 1e-7;
constexpr int kMaxAscentIters = 100000;

// Row i with its diagonal entry zeroed: the interference-only coefficients.
Eigen::VectorXd off_row(const Eigen::MatrixXd& m, int i) {
    Eigen::VectorXd r = m.row(i).transpose();
    r(i) = 0.0;
    return r;
}

}  // namespace

void PowerSubproblem::validate() const {
    const int k = n();
    if (bob_gain.cols() != k || eve_gain.rows() != k || eve_gain.cols() != k ||
        eve_an.size() != k)
        throw std::invalid_argument("power subproblem: inconsistent shapes");
    if (budget <= 0.0) throw std::invalid_argument("power subproblem: budget must be > 0");
    if (floor < 0.0) throw std::invalid_argument("power subproblem: floor must be >= 0");
    if (k * floor > budget + 1e-15)
        throw std::invalid_argument("power subproblem: infeasible budget (n*floor > budget)");
}

PowerSubproblem make_power_subproblem(const RisLinearization& linz, const PhaseShifts& theta,
                                      const NoiseConfig& noise, double an_variance, double budget,
                                      double floor) {
    const int ns = linz.n_signal();
    const int nc = linz.n_columns();
    PowerSubproblem sub;
    sub.bob_gain.resize(ns, ns);
    sub.eve_gain.resize(ns, ns);
    sub.eve_an = Eigen::VectorXd::Zero(ns);
    sub.budget = budget;
    sub.floor = floor;
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < nc; ++j) {
            if (j < ns) {
                const std::complex<double> x =
                    linz.omega(i, j) + theta.theta.dot(linz.mu[i].col(j));
                sub.bob_gain(i, j) = std::norm(x) / noise.sigma_b2;
            }
            const std::complex<double> y = linz.zeta(i, j) + theta.theta.dot(linz.eta[i].col(j));
            if (j < ns)
                sub.eve_gain(i, j) = std::norm(y) / noise.sigma_e2;
            else
                sub.eve_an(i) += an_variance * std::norm(y) / noise.sigma_e2;
        }
    }
    sub.validate();
    return sub;
}

AuxMultipliers update_multipliers(const PowerSubproblem& sub, const Eigen::VectorXd& p) {
    const int k = sub.n();
    AuxMultipliers t;
    t.t_bob.resize(k);
    t.t_eve.resize(k);
    for (int i = 0; i < k; ++i) {
        t.t_bob(i) = 1.0 / (1.0 + off_row(sub.bob_gain, i).dot(p));
        t.t_eve(i) = 1.0 / (1.0 + sub.eve_gain.row(i).dot(p) + sub.eve_an(i));
    }
    return t;
}

double p3_objective(const PowerSubproblem& sub, const Eigen::VectorXd& p,
                    const AuxMultipliers& t) {
    double obj = 0.0;
    for (int i = 0; i < sub.n(); ++i) {
        obj += std::log(1.0 + sub.bob_gain.row(i).dot(p)) -
               t.t_bob(i) * (1.0 + off_row(sub.bob_gain, i).dot(p)) + std::log(t.t_bob(i)) + 1.0;
        obj -= t.t_eve(i) * (1.0 + sub.eve_gain.row(i).dot(p) + sub.eve_an(i)) -
               std::log(1.0 + off_row(sub.eve_gain, i).dot(p) + sub.eve_an(i)) -
               std::log(t.t_eve(i)) - 1.0;
    }
    return obj;
}

double secrecy_objective(const PowerSubproblem& sub, const Eigen::VectorXd& p) {
    double obj = 0.0;
    for (int i = 0; i < sub.n(); ++i) {
        obj += std::log2(1.0 + sub.bob_gain.row(i).dot(p)) -
               std::log2(1.0 + off_row(sub.bob_gain, i).dot(p));
        obj -= std::log2(1.0 + sub.eve_gain.row(i).dot(p) + sub.eve_an(i)) -
               std::log2(1.0 + off_row(sub.eve_gain, i).dot(p) + sub.eve_an(i));
    }
    return obj;
}

Eigen::VectorXd project_feasible(const Eigen::VectorXd& y, double budget, double floor) {
    const int k = static_cast<int>(y.size());
    if (k * floor > budget + 1e-15)
        throw std::invalid_argument("project_feasible: infeasible budget");
    Eigen::VectorXd p = y.cwiseMax(floor);
    if (p.sum() <= budget) return p;
    // Find lambda >= 0 with sum max(y - lambda, floor) = budget; the sum is
    // nonincreasing in lambda, so bisection converges unconditionally.
    double lo = 0.0, hi = y.maxCoeff() - floor;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((y.array() - mid).max(floor).sum() > budget)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-18 * std::max(1.0, std::abs(hi))) break;
    }
    return (y.array() - hi).max(floor);
}

Eigen::VectorXd p4_gradient(const PowerSubproblem& sub, const AuxMultipliers& t,
                            const Eigen::VectorXd& p) {
    const int k = sub.n();
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(k);
    for (int i = 0; i < k; ++i) {
        const Eigen::VectorXd a = sub.bob_gain.row(i).transpose();
        const Eigen::VectorXd a_off = off_row(sub.bob_gain, i);
        const Eigen::VectorXd b = sub.eve_gain.row(i).transpose();
        const Eigen::VectorXd b_off = off_row(sub.eve_gain, i);
        grad += a / (1.0 + a.dot(p)) - t.t_bob(i) * a_off;
        grad += b_off / (1.0 + b_off.dot(p) + sub.eve_an(i)) - t.t_eve(i) * b;
    }
    return grad;
}

double p4_stationarity(const PowerSubproblem& sub, const AuxMultipliers& t,
                       const Eigen::VectorXd& p) {
    return (project_feasible(p + p4_gradient(sub, t, p), sub.budget, sub.floor) - p).norm();
}

Eigen::VectorXd solve_p4(const PowerSubproblem& sub, const AuxMultipliers& t,
                         const Eigen::VectorXd& p0) {
    sub.validate();
    const auto objective = [&](const Eigen::VectorXd& p) {
        double obj = 0.0;
        for (int i = 0; i < sub.n(); ++i) {
            obj += std::log(1.0 + sub.bob_gain.row(i).dot(p)) -
                   t.t_bob(i) * off_row(sub.bob_gain, i).dot(p);
            obj += std::log(1.0 + off_row(sub.eve_gain, i).dot(p) + sub.eve_an(i)) -
                   t.t_eve(i) * sub.eve_gain.row(i).dot(p);
        }
        return obj;
    };

    Eigen::VectorXd p = project_feasible(p0, sub.budget, sub.floor);
    double value = objective(p);
    double step = 1.0;
    for (int it = 0; it < kMaxAscentIters; ++it) {
        const Eigen::VectorXd grad = p4_gradient(sub, t, p);
        if ((project_feasible(p + grad, sub.budget, sub.floor) - p).norm() < kStationarityTol)
            break;
        // Backtrack along the projection arc; the arc direction has a
        // nonnegative inner product with the gradient, so sufficient increase
        // is achievable for small enough steps.
        bool moved = false;
        while (step > 1e-18) {
            const Eigen::VectorXd cand = project_feasible(p + step * grad, sub.budget, sub.floor);
            const double cand_value = objective(cand);
            if (cand_value >= value + 1e-4 * grad.dot(cand - p)) {
                p = cand;
                value = cand_value;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;  // step underflow: numerically stationary
        step = std::min(step * 2.0, 1e8);
    }
    return p;
}

Eigen::VectorXd solve_p4(const PowerSubproblem& sub, const AuxMultipliers& t) {
    return solve_p4(sub, t,
                    Eigen::VectorXd::Constant(sub.n(), sub.budget / std::max(sub.n(), 1)));
}

PowerOptResult optimize_power(const PowerSubproblem& sub, const Eigen::VectorXd& p0, double tol,
                              int max_rounds) {
    sub.validate();
    PowerOptResult res;
    res.p = project_feasible(p0, sub.budget, sub.floor);
    res.objective_trace.push_back(p3_objective(sub, res.p, update_multipliers(sub, res.p)));
    for (int round = 0; round < max_rounds; ++round) {
        const AuxMultipliers t = update_multipliers(sub, res.p);
        res.p = solve_p4(sub, t, res.p);
        res.rounds = round + 1;
        res.objective_trace.push_back(p3_objective(sub, res.p, t));
        const auto& tr = res.objective_trace;
        if (std::abs(tr[tr.size() - 1] - tr[tr.size() - 2]) < tol) break;
    }
    return res;
}

}  // namespace oamris
