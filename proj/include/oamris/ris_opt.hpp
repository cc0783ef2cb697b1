// Phase-shift optimization on the complex circle manifold: conjugate
// gradient with Polak-Ribiere updates, projection-based vector transport,
// Armijo backtracking, and per-element normalization as the retraction.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "oamris/metrics.hpp"

namespace oamris {

// Minimization objective f(theta) = -(rate_bob_signal - rate_eve) for fixed
// powers, evaluated through the quotient form.
struct RisProblem {
    RisLinearization linz;
    Eigen::VectorXd p;
    double an_variance = 0.0;
    double sigma_b2 = 1e-5;
    double sigma_e2 = 1e-5;

    double objective(const Eigen::VectorXcd& theta) const;
    // Wirtinger gradient (2 d/dtheta* convention): the real-coordinate
    // gradient is [Re(g); Im(g)].
    Eigen::VectorXcd euclidean_gradient(const Eigen::VectorXcd& theta) const;
};

// Tangent-space projection at theta: v - Re{v o theta*} o theta.
Eigen::VectorXcd project_tangent(const Eigen::VectorXcd& theta, const Eigen::VectorXcd& v);

// Per-element normalization back onto the manifold.
Eigen::VectorXcd retract_unit(const Eigen::VectorXcd& ambient);

struct RmcgOptions {
    double grad_tol = 1e-6;
    int max_iter = 200;
    double armijo_iota = 1e-4;    // sufficient-decrease constant
    double armijo_nu = 0.5;       // backtracking shrink factor
    double initial_step = 1.0;    // step carried across iterations
    int max_backtracks = 50;      // per direction before falling back
    int restart_period = 0;       // 0: restart every Q iterations
};

struct ManifoldState {
    Eigen::VectorXcd theta;
    Eigen::VectorXcd grad;  // Riemannian gradient at theta
    Eigen::VectorXcd xi;    // search direction at theta
    double step = 1.0;      // last accepted Armijo step
    double value = 0.0;     // objective at theta
    int iter = 0;
    double last_armijo_slack = 0.0;  // accepted decrease minus required decrease
};

// State at theta0 with the steepest-descent initial direction xi = -grad.
ManifoldState init_state(const RisProblem& prob, const PhaseShifts& theta0,
                         const RmcgOptions& opts = {});

// One conjugate-gradient iteration: line search along state.xi, retract,
// recompute the gradient, and build the next direction. Returns false when
// even the steepest-descent fallback cannot satisfy the Armijo condition.
bool cg_step(const RisProblem& prob, ManifoldState& state, const RmcgOptions& opts = {});

struct ThetaOptResult {
    PhaseShifts theta;
    std::vector<double> trace;  // objective value per iterate, nonincreasing
    int iterations = 0;
    bool stagnated = false;
    double grad_norm = 0.0;
    // Worst-case diagnostics across the run, for invariant checks.
    double max_unit_modulus_error = 0.0;
    double max_tangency_error = 0.0;
    double min_armijo_slack = 0.0;  // accepted decrease minus required decrease
};

ThetaOptResult optimize_theta(const RisProblem& prob, const PhaseShifts& theta0,
                              const RmcgOptions& opts = {});

}  // namespace oamris
