#include "oamris/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "oamris/power_opt.hpp"
#include "oamris/ris_opt.hpp"

namespace oamris {

std::string_view scheme_name(Scheme s) {
    switch (s) {
        case Scheme::proposed: return "proposed";
        case Scheme::equal_power: return "equal-power";
        case Scheme::no_an: return "no-an";
        case Scheme::random_phase: return "random-phase";
        case Scheme::no_ris: return "no-ris";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    for (Scheme s : {Scheme::proposed, Scheme::equal_power, Scheme::no_an, Scheme::random_phase,
                     Scheme::no_ris})
        if (name == scheme_name(s)) return s;
    throw std::invalid_argument("scheme.name: unknown scheme '" + std::string(name) + "'");
}

void SchemeConfig::validate() const {
    if (ao_tol <= 0.0) throw std::invalid_argument("scheme.ao_tol: must be > 0");
    if (ao_max_iter < 1) throw std::invalid_argument("scheme.ao_max_iter: must be >= 1");
}

double PowerBudget::resolved_floor(int n_signal) const {
    return floor >= 0.0 ? floor : 1e-3 * rho * total_power / n_signal;
}

void PowerBudget::validate() const {
    if (total_power <= 0.0) throw std::invalid_argument("power.total_power: must be > 0");
    if (rho <= 0.0 || rho > 1.0) throw std::invalid_argument("power.rho: must be in (0,1]");
}

namespace {

PhaseShifts initial_phases(Scheme scheme, int q, std::uint64_t seed) {
    if (scheme == Scheme::random_phase) return PhaseShifts::random(q, seed);
    return PhaseShifts::all_ones(q);
}

}  // namespace

RunResult run_rmcg_ao(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                      const NoiseConfig& noise, const PowerBudget& budget,
                      const SchemeConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    noise.validate();
    budget.validate();
    cfg.validate();
    plan.validate(basis);

    const bool optimize_p =
        cfg.scheme != Scheme::equal_power;
    const bool optimize_phases =
        cfg.scheme != Scheme::random_phase && ch.q() > 0;

    const double floor = budget.resolved_floor(plan.n_signal());
    PowerAllocation power =
        PowerAllocation::equal_split(plan, budget.rho, budget.total_power, floor);
    PhaseShifts theta = initial_phases(cfg.scheme, ch.q(), cfg.seed);

    const RisLinearization linz = build_linearization(ch, basis, plan);
    const auto secrecy_now = [&] {
        return rates_and_secrecy(sinr_bob(ch, basis, plan, power, theta, noise),
                                 sinr_eve(ch, basis, plan, power, theta, noise),
                                 plan.combinations)
            .secrecy;
    };

    RunResult res;
    res.sr_trace.push_back(secrecy_now());
    for (int iter = 0; iter < cfg.ao_max_iter; ++iter) {
        if (optimize_p) {
            const PowerSubproblem sub = make_power_subproblem(
                linz, theta, noise, power.an_variance, budget.rho * budget.total_power, floor);
            const AuxMultipliers t = update_multipliers(sub, power.p);
            power.p = solve_p4(sub, t, power.p);
        }
        if (optimize_phases) {
            RisProblem prob{linz, power.p, power.an_variance, noise.sigma_b2, noise.sigma_e2};
            const ThetaOptResult opt = optimize_theta(prob, theta);
            theta = opt.theta;
            res.stagnated = res.stagnated || opt.stagnated;
        }
        res.sr_trace.push_back(secrecy_now());
        const auto& tr = res.sr_trace;
        if (std::abs(tr[tr.size() - 1] - tr[tr.size() - 2]) < cfg.ao_tol) break;
    }

    res.iterations = static_cast<int>(res.sr_trace.size()) - 1;
    res.p = power.p;
    res.theta = theta;
    res.gamma_bob = sinr_bob(ch, basis, plan, power, theta, noise);
    res.gamma_eve = sinr_eve(ch, basis, plan, power, theta, noise);
    const RateReport rr = rates_and_secrecy(res.gamma_bob, res.gamma_eve, plan.combinations);
    res.rate_bob = rr.rate_bob;
    res.rate_eve = rr.rate_eve;
    res.secrecy = rr.secrecy;
    res.secrecy_clamped = rr.secrecy_clamped;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
}

SchemeInputs scheme_inputs(Scheme scheme, const ChannelSet& ch, const OamBasis& basis,
                           const ModePlan& plan, const PowerBudget& budget) {
    SchemeInputs in{ch, plan, budget};
    switch (scheme) {
        case Scheme::no_an:
            // Every mode carries signal, nothing is left for AN.
            in.plan = all_signal_plan(basis);
            in.budget.rho = 1.0;
            break;
        case Scheme::no_ris:
            in.channels = ch.without_ris();
            break;
        default:
            break;
    }
    return in;
}

RunResult run_baseline(Scheme scheme, const ChannelSet& ch, const OamBasis& basis,
                       const ModePlan& plan, const NoiseConfig& noise, const PowerBudget& budget,
                       const SchemeConfig& cfg) {
    SchemeConfig scfg = cfg;
    scfg.scheme = scheme;
    const SchemeInputs in = scheme_inputs(scheme, ch, basis, plan, budget);
    return run_rmcg_ao(in.channels, basis, in.plan, noise, in.budget, scfg);
}

}  // namespace oamris
