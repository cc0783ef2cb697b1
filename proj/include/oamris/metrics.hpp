// SINRs, achievable rates, and the secrecy rate, via two independent
// algebraic routes: full matrix products through the composite channel, and
// the precomputed quotient form used by the phase-shift optimizer.
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "oamris/channel.hpp"
#include "oamris/oam.hpp"

namespace oamris {

struct NoiseConfig {
    double sigma_b2 = 1e-5;  // Bob noise variance [W]
    double sigma_e2 = 1e-5;  // Eve noise variance [W]

    void validate() const;
};

// RIS phase vector on the complex circle manifold (|theta_q| = 1).
struct PhaseShifts {
    Eigen::VectorXcd theta;

    int q() const { return static_cast<int>(theta.size()); }
    static PhaseShifts all_ones(int q);
    static PhaseShifts random(int q, std::uint64_t seed);
    void validate() const;  // unit modulus within 1e-9
};

// Transmit power state: per-signal-mode powers plus the AN split.
struct PowerAllocation {
    Eigen::VectorXd p;         // aligned with ModePlan::signal_modes [W]
    double rho = 0.9;          // fraction of the budget carrying signal
    double total_power = 1.0;  // P_T [W]
    double floor = 0.0;        // per-mode power floor [W]
    double an_variance = 0.0;  // per-AN-mode variance (1-rho) P_T / N_an [W]

    double budget() const { return rho * total_power; }
    static PowerAllocation equal_split(const ModePlan& plan, double rho, double total_power,
                                       double floor);
    void validate() const;  // budget/floor feasibility and AN closed form
};

// Composite end-to-end channels with the RIS phase matrix diag(theta^H)
// folded in.
Eigen::MatrixXcd composite_bob_channel(const ChannelSet& ch, const PhaseShifts& theta);
Eigen::MatrixXcd composite_eve_channel(const ChannelSet& ch, const PhaseShifts& theta);

// Direct route. Bob decomposes with the mode basis; AN is pre-known to the
// legitimate side and cancelled. Eve observes raw antenna rows (one row per
// signal-mode label) and is jammed by the AN modes.
Eigen::VectorXd sinr_bob(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                         const PowerAllocation& power, const PhaseShifts& theta,
                         const NoiseConfig& noise);
Eigen::VectorXd sinr_eve(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                         const PowerAllocation& power, const PhaseShifts& theta,
                         const NoiseConfig& noise);

// Phase-independent pieces of the quotient form: for row mode l and column
// mode k, the scalar through the direct link plus theta^H times the vector
// through the RIS link reproduces the composite coefficient.
struct RisLinearization {
    std::vector<int> row_modes;  // = plan.signal_modes
    std::vector<int> col_modes;  // signal modes then AN modes
    Eigen::MatrixXcd omega;      // n_signal x n_signal      direct Alice->Bob
    Eigen::MatrixXcd zeta;       // n_signal x n_columns     direct Alice->Eve
    std::vector<Eigen::MatrixXcd> mu;   // per row: Q x n_signal   RIS path to Bob
    std::vector<Eigen::MatrixXcd> eta;  // per row: Q x n_columns  RIS path to Eve

    int n_signal() const { return static_cast<int>(omega.rows()); }
    int n_columns() const { return static_cast<int>(zeta.cols()); }
    int n_an() const { return n_columns() - n_signal(); }
    int q() const { return n_signal() ? static_cast<int>(mu[0].rows()) : 0; }
};

RisLinearization build_linearization(const ChannelSet& ch, const OamBasis& basis,
                                     const ModePlan& plan);

// Quotient-form route; must agree with the direct route to ~1e-10 relative.
Eigen::VectorXd sinr_bob_linearized(const RisLinearization& linz, const Eigen::VectorXd& p,
                                    const PhaseShifts& theta, double sigma_b2);
Eigen::VectorXd sinr_eve_linearized(const RisLinearization& linz, const Eigen::VectorXd& p,
                                    double an_variance, const PhaseShifts& theta,
                                    double sigma_e2);

struct RateReport {
    double rate_bob_signal = 0.0;  // sum log2(1+gamma_B) [bit/s/Hz]
    double rate_bob = 0.0;         // + index bits log2 K
    double rate_eve = 0.0;
    double secrecy = 0.0;          // rate_bob - rate_eve, unclamped
    double secrecy_clamped = 0.0;  // max(secrecy, 0)
};

RateReport rates_and_secrecy(const Eigen::VectorXd& gamma_bob, const Eigen::VectorXd& gamma_eve,
                             std::int64_t combinations);

}  // namespace oamris
