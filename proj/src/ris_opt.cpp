#include "oamris/ris_opt.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oamris {

namespace {

constexpr double kTwoOverLn2 = 2.0 / std::numbers::ln2;

double column_weight(const RisProblem& prob, int j) {
    return j < prob.linz.n_signal() ? prob.p(j) : prob.an_variance;
}

}  // namespace

double RisProblem::objective(const Eigen::VectorXcd& theta) const {
    const int ns = linz.n_signal();
    const int nc = linz.n_columns();
    double f = 0.0;
    for (int i = 0; i < ns; ++i) {
        const Eigen::RowVectorXcd ris_b = theta.adjoint() * linz.mu[i];
        const Eigen::RowVectorXcd ris_e = theta.adjoint() * linz.eta[i];
        double full_b = sigma_b2, self_b = 0.0;
        for (int j = 0; j < ns; ++j) {
            const double w = p(j) * std::norm(linz.omega(i, j) + ris_b(j));
            full_b += w;
            if (j == i) self_b = w;
        }
        double full_e = sigma_e2, self_e = 0.0;
        for (int j = 0; j < nc; ++j) {
            const double w = column_weight(*this, j) * std::norm(linz.zeta(i, j) + ris_e(j));
            full_e += w;
            if (j == i) self_e = w;
        }
        f -= std::log2(full_b) - std::log2(full_b - self_b);
        f += std::log2(full_e) - std::log2(full_e - self_e);
    }
    return f;
}

Eigen::VectorXcd RisProblem::euclidean_gradient(const Eigen::VectorXcd& theta) const {
    const int ns = linz.n_signal();
    const int nc = linz.n_columns();
    Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(theta.size());
    for (int i = 0; i < ns; ++i) {
        const Eigen::RowVectorXcd ris_b = theta.adjoint() * linz.mu[i];
        const Eigen::RowVectorXcd ris_e = theta.adjoint() * linz.eta[i];

        // coef_j = weight_j * conj(composite coefficient); the numerators of
        // the quotient derivatives are then single matrix-vector products.
        Eigen::VectorXcd coef_b(ns), coef_e(nc);
        double full_b = sigma_b2, full_e = sigma_e2;
        for (int j = 0; j < ns; ++j) {
            const std::complex<double> x = linz.omega(i, j) + ris_b(j);
            coef_b(j) = p(j) * std::conj(x);
            full_b += p(j) * std::norm(x);
        }
        for (int j = 0; j < nc; ++j) {
            const std::complex<double> y = linz.zeta(i, j) + ris_e(j);
            coef_e(j) = column_weight(*this, j) * std::conj(y);
            full_e += column_weight(*this, j) * std::norm(y);
        }
        const double part_b = full_b - p(i) * std::norm(linz.omega(i, i) + ris_b(i));
        const double part_e =
            full_e - p(i) * std::norm(linz.zeta(i, i) + ris_e(i));

        const Eigen::VectorXcd num_b_full = linz.mu[i] * coef_b;
        const Eigen::VectorXcd num_b_part =
            num_b_full - linz.mu[i].col(i) * coef_b(i);
        const Eigen::VectorXcd num_e_full = linz.eta[i] * coef_e;
        const Eigen::VectorXcd num_e_part =
            num_e_full - linz.eta[i].col(i) * coef_e(i);

        grad += kTwoOverLn2 * (-num_b_full / full_b + num_b_part / part_b +
                               num_e_full / full_e - num_e_part / part_e);
    }
    return grad;
}

Eigen::VectorXcd project_tangent(const Eigen::VectorXcd& theta, const Eigen::VectorXcd& v) {
    return v - v.cwiseProduct(theta.conjugate()).real().cast<std::complex<double>>().cwiseProduct(
                   theta);
}

Eigen::VectorXcd retract_unit(const Eigen::VectorXcd& ambient) {
    Eigen::VectorXcd out(ambient.size());
    for (Eigen::Index i = 0; i < ambient.size(); ++i) out(i) = ambient(i) / std::abs(ambient(i));
    return out;
}

ManifoldState init_state(const RisProblem& prob, const PhaseShifts& theta0,
                         const RmcgOptions& opts) {
    theta0.validate();
    if (theta0.q() != prob.linz.q())
        throw std::invalid_argument("theta length does not match the linearization");
    ManifoldState s;
    s.theta = theta0.theta;
    s.grad = project_tangent(s.theta, prob.euclidean_gradient(s.theta));
    s.xi = -s.grad;
    s.step = opts.initial_step;
    s.value = prob.objective(s.theta);
    s.iter = 0;
    return s;
}

namespace {

struct LineSearchHit {
    Eigen::VectorXcd theta;
    double value = 0.0;
    double step = 0.0;
    double slack = 0.0;
};

// Smallest w >= 0 with f(theta) - f(unt(theta + step nu^w xi)) >= iota step nu^w |grad|^2.
bool armijo_search(const RisProblem& prob, const ManifoldState& s, const Eigen::VectorXcd& xi,
                   const RmcgOptions& opts, LineSearchHit& hit) {
    const double gnorm2 = s.grad.squaredNorm();
    double beta = s.step;
    for (int w = 0; w <= opts.max_backtracks; ++w) {
        const Eigen::VectorXcd trial = retract_unit(s.theta + beta * xi);
        const double trial_value = prob.objective(trial);
        const double decrease = s.value - trial_value;
        const double required = opts.armijo_iota * beta * gnorm2;
        if (decrease >= required) {
            hit = {trial, trial_value, beta, decrease - required};
            return true;
        }
        beta *= opts.armijo_nu;
    }
    return false;
}

}  // namespace

bool cg_step(const RisProblem& prob, ManifoldState& state, const RmcgOptions& opts) {
    Eigen::VectorXcd used_xi = state.xi;
    LineSearchHit hit;
    if (!armijo_search(prob, state, used_xi, opts, hit)) {
        used_xi = -state.grad;  // conjugate direction failed; steepest descent
        if (!armijo_search(prob, state, used_xi, opts, hit)) return false;
    }

    const double prev_gnorm2 = state.grad.squaredNorm();
    const Eigen::VectorXcd new_grad =
        project_tangent(hit.theta, prob.euclidean_gradient(hit.theta));

    // Polak-Ribiere with projection as the vector transport; restart on a
    // negative coefficient and periodically.
    const Eigen::VectorXcd carried_grad = project_tangent(hit.theta, state.grad);
    const Eigen::VectorXcd carried_xi = project_tangent(hit.theta, used_xi);
    const double alpha = new_grad.dot(new_grad - carried_grad).real() / prev_gnorm2;

    const int period = opts.restart_period > 0
                           ? opts.restart_period
                           : std::max(1, static_cast<int>(state.theta.size()));
    state.iter += 1;
    if (alpha < 0.0 || state.iter % period == 0)
        state.xi = -new_grad;
    else
        state.xi = -new_grad + alpha * carried_xi;

    state.theta = hit.theta;
    state.grad = new_grad;
    state.step = hit.step;
    state.value = hit.value;
    state.last_armijo_slack = hit.slack;
    return true;
}

ThetaOptResult optimize_theta(const RisProblem& prob, const PhaseShifts& theta0,
                              const RmcgOptions& opts) {
    ThetaOptResult res;
    res.min_armijo_slack = std::numeric_limits<double>::infinity();

    ManifoldState state = init_state(prob, theta0, opts);
    res.trace.push_back(state.value);

    const auto record = [&](const ManifoldState& s) {
        for (Eigen::Index i = 0; i < s.theta.size(); ++i)
            res.max_unit_modulus_error =
                std::max(res.max_unit_modulus_error, std::abs(std::abs(s.theta(i)) - 1.0));
        const double tangency =
            s.grad.size() ? s.grad.cwiseProduct(s.theta.conjugate()).real().cwiseAbs().maxCoeff()
                          : 0.0;
        res.max_tangency_error = std::max(res.max_tangency_error, tangency);
    };
    record(state);

    while (state.grad.norm() >= opts.grad_tol && state.iter < opts.max_iter) {
        if (!cg_step(prob, state, opts)) {
            res.stagnated = true;
            break;
        }
        res.trace.push_back(state.value);
        res.min_armijo_slack = std::min(res.min_armijo_slack, state.last_armijo_slack);
        record(state);
    }

    res.theta.theta = state.theta;
    res.iterations = state.iter;
    res.grad_norm = state.grad.norm();
    return res;
}

}  // namespace oamris
