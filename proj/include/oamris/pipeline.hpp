// Alternating optimization of (p, theta) and the comparison schemes.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oamris/channel.hpp"
#include "oamris/metrics.hpp"
#include "oamris/oam.hpp"

namespace oamris {

enum class Scheme {
    proposed,      // joint power + phase optimization
    equal_power,   // fixed equal power split, phases optimized
    no_an,         // all modes carry signal, no AN, rho = 1
    random_phase,  // fixed random unit-modulus phases, power optimized
    no_ris,        // RIS removed, power optimized
};

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);

struct SchemeConfig {
    Scheme scheme = Scheme::proposed;
    double ao_tol = 1e-4;  // stop when |delta secrecy rate| drops below this
    int ao_max_iter = 50;
    std::uint64_t seed = 1;

    void validate() const;
};

struct PowerBudget {
    double total_power = 1.0;  // P_T [W]
    double rho = 0.9;
    double floor = -1.0;  // p_th [W]; negative selects 1e-3 * rho P_T / N_s

    double resolved_floor(int n_signal) const;
    void validate() const;
};

struct RunResult {
    std::vector<double> sr_trace;  // secrecy rate after each iteration (index bits included)
    Eigen::VectorXd p;
    PhaseShifts theta;
    Eigen::VectorXd gamma_bob, gamma_eve;
    double rate_bob = 0.0, rate_eve = 0.0;
    double secrecy = 0.0, secrecy_clamped = 0.0;
    int iterations = 0;
    double wall_seconds = 0.0;
    bool stagnated = false;
};

// Alternating optimization: one multiplier/power round and one full phase
// optimization per iteration, until the secrecy rate settles. The trace is
// nondecreasing up to roundoff and has length iterations + 1.
RunResult run_rmcg_ao(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                      const NoiseConfig& noise, const PowerBudget& budget,
                      const SchemeConfig& cfg);

// The plan/budget/channel variations a scheme derives from the base inputs:
// the all-signal plan with rho = 1 for no_an, an empty RIS for no_ris.
struct SchemeInputs {
    ChannelSet channels;
    ModePlan plan;
    PowerBudget budget;
};
SchemeInputs scheme_inputs(Scheme scheme, const ChannelSet& ch, const OamBasis& basis,
                           const ModePlan& plan, const PowerBudget& budget);

// Runs `scheme` on the inputs derived by scheme_inputs().
RunResult run_baseline(Scheme scheme, const ChannelSet& ch, const OamBasis& basis,
                       const ModePlan& plan, const NoiseConfig& noise, const PowerBudget& budget,
                       const SchemeConfig& cfg);

}  // namespace oamris
