// Signal power allocation for a fixed phase vector: the concave surrogate
// with auxiliary multipliers, solved by alternating closed-form multiplier
// updates with projected-gradient ascent over the budget/floor region.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "oamris/metrics.hpp"

namespace oamris {

// Squared channel magnitudes for a fixed theta, noise-normalized so the SINR
// denominators carry a bare "+1".
struct PowerSubproblem {
    Eigen::MatrixXd bob_gain;  // |a_{l,k}|^2, n x n
    Eigen::MatrixXd eve_gain;  // |b_{l,k}|^2, n x n
    Eigen::VectorXd eve_an;    // per-row AN constant: sigma_an^2 sum_z |b_{l,z}|^2
    double budget = 1.0;       // rho P_T
    double floor = 0.0;        // p_th

    int n() const { return static_cast<int>(bob_gain.rows()); }
    // Throws on inconsistent shapes or an infeasible budget (n*floor > budget).
    void validate() const;
};

PowerSubproblem make_power_subproblem(const RisLinearization& linz, const PhaseShifts& theta,
                                      const NoiseConfig& noise, double an_variance, double budget,
                                      double floor);

struct AuxMultipliers {
    Eigen::VectorXd t_bob;
    Eigen::VectorXd t_eve;
};

// Closed-form optimal multipliers for a given power vector.
AuxMultipliers update_multipliers(const PowerSubproblem& sub, const Eigen::VectorXd& p);

// Surrogate objective (nats). At t = update_multipliers(sub, p) it equals
// ln2 times secrecy_objective(sub, p).
double p3_objective(const PowerSubproblem& sub, const Eigen::VectorXd& p,
                    const AuxMultipliers& t);

// Secrecy-rate part that depends on p (bits; excludes the index-bit constant).
double secrecy_objective(const PowerSubproblem& sub, const Eigen::VectorXd& p);

// Euclidean projection onto {p : sum p <= budget, p >= floor} by shift-and-
// clip with bisection on the dual variable.
Eigen::VectorXd project_feasible(const Eigen::VectorXd& y, double budget, double floor);

// Concave inner problem for fixed multipliers, solved by projected-gradient
// ascent with backtracking; terminates when the projected-gradient optimality
// measure ||P(p + grad) - p|| drops below 1e-7.
Eigen::VectorXd solve_p4(const PowerSubproblem& sub, const AuxMultipliers& t);
Eigen::VectorXd solve_p4(const PowerSubproblem& sub, const AuxMultipliers& t,
                         const Eigen::VectorXd& p0);

// Gradient and optimality measure of the inner problem; exposed for tests.
Eigen::VectorXd p4_gradient(const PowerSubproblem& sub, const AuxMultipliers& t,
                            const Eigen::VectorXd& p);
double p4_stationarity(const PowerSubproblem& sub, const AuxMultipliers& t,
                       const Eigen::VectorXd& p);

struct PowerOptResult {
    Eigen::VectorXd p;
    std::vector<double> objective_trace;  // surrogate objective after each round
    int rounds = 0;
};

// Alternate multiplier updates and inner solves until the surrogate objective
// changes by less than tol (default 1e-6) or max_rounds is reached. The trace
// is nondecreasing.
PowerOptResult optimize_power(const PowerSubproblem& sub, const Eigen::VectorXd& p0,
                              double tol = 1e-6, int max_rounds = 100);

}  // namespace oamris
