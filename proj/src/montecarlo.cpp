#include "oamris/montecarlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace oamris {

void MonteCarloConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("mc.trials: must be >= 1");
    if (snr_grid_db.empty()) throw std::invalid_argument("mc.snr_grid_db: must be nonempty");
}

ConfidenceInterval wilson_interval(std::int64_t errors, std::int64_t total) {
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(total);
    const double phat = static_cast<double>(errors) / n;
    const double denom = 1.0 + z * z / n;
    const double center = (phat + z * z / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Everything that is fixed across the trials of one curve.
struct CurveContext {
    Eigen::MatrixXcd h_bob, h_eve;   // composite N x N channels
    Eigen::MatrixXcd f_signal;       // N x Ns transmit columns
    Eigen::MatrixXcd f_an;           // N x Nz
    Eigen::MatrixXcd bob_rows;       // Ns x N rows of F^H at the signal modes
    Eigen::MatrixXcd g_signal;       // Ns x Ns mode-domain composite at Bob
    Eigen::MatrixXcd g_an;           // Ns x Nz AN leakage into the signal modes
    std::vector<int> eve_streams;    // antenna-domain stream index per signal mode
    Eigen::VectorXd amp;             // per-mode QPSK component amplitude sqrt(p/2)
    double an_amp = 0.0;             // per-component AN amplitude sqrt(var/2)
    double sigma_b = 0.0;
    double desired_power_eve = 0.0;  // sum_i p_i ||h_eve f_i||^2
    double tx_stream_power = 0.0;    // average per-antenna transmit power
    bool include_an = false;
    int n = 0, ns = 0, nz = 0;
};

CurveContext make_context(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                          const PowerAllocation& power, const PhaseShifts& theta,
                          const NoiseConfig& noise, const MonteCarloConfig& mc) {
    CurveContext c;
    c.n = ch.n();
    c.ns = plan.n_signal();
    c.nz = plan.n_an();
    c.include_an = mc.include_an && c.nz > 0 && power.an_variance > 0.0;
    c.h_bob = composite_bob_channel(ch, theta);
    c.h_eve = composite_eve_channel(ch, theta);

    c.f_signal.resize(c.n, c.ns);
    c.amp.resize(c.ns);
    for (int i = 0; i < c.ns; ++i) {
        c.f_signal.col(i) = basis.column(plan.signal_modes[i]);
        c.amp(i) = std::sqrt(power.p(i) / 2.0);
        c.eve_streams.push_back(basis.column_of(plan.signal_modes[i]));
    }
    c.f_an.resize(c.n, c.nz);
    for (int j = 0; j < c.nz; ++j) c.f_an.col(j) = basis.column(plan.an_modes[j]);
    c.an_amp = std::sqrt(power.an_variance / 2.0);

    c.bob_rows = c.f_signal.adjoint();
    c.g_signal = c.bob_rows * c.h_bob * c.f_signal;
    c.g_an = c.bob_rows * c.h_bob * c.f_an;

    c.sigma_b = std::sqrt(noise.sigma_b2);
    for (int i = 0; i < c.ns; ++i)
        c.desired_power_eve += power.p(i) * (c.h_eve * c.f_signal.col(i)).squaredNorm();
    c.tx_stream_power =
        (power.p.sum() + (c.include_an ? c.nz * power.an_variance : 0.0)) / c.n;
    return c;
}

// Rows of Eve's equalizer at the streams that carry desired symbols.
Eigen::MatrixXcd eve_equalizer_rows(const CurveContext& c, EveReceiver rx, double sigma_e2) {
    Eigen::MatrixXcd w;
    if (rx == EveReceiver::zf) {
        w = c.h_eve.completeOrthogonalDecomposition().pseudoInverse();
    } else {
        // LMMSE assuming white per-antenna transmit power (Eve does not know
        // the basis, so she cannot do better than a white input model).
        const double px = c.tx_stream_power;
        const Eigen::MatrixXcd m =
            px * (c.h_eve * c.h_eve.adjoint()) +
            sigma_e2 * Eigen::MatrixXcd::Identity(c.n, c.n);
        w = px * c.h_eve.adjoint() * m.llt().solve(Eigen::MatrixXcd::Identity(c.n, c.n));
    }
    Eigen::MatrixXcd rows(c.ns, c.n);
    for (int i = 0; i < c.ns; ++i) rows.row(i) = w.row(c.eve_streams[i]);
    return rows;
}

struct PointTally {
    std::int64_t err_bob = 0;
    std::int64_t err_eve = 0;
    double tx_power = 0.0;
};

PointTally run_trial(const CurveContext& c, const Eigen::MatrixXcd& w_rows, double sigma_e,
                     std::uint64_t trial_seed) {
    std::mt19937_64 rng(trial_seed);
    std::normal_distribution<double> randn(0.0, 1.0);

    // Gray-mapped QPSK: the I bit and the Q bit map to independent signs.
    const std::uint64_t bits = rng();
    Eigen::VectorXcd symbols(c.ns);
    for (int i = 0; i < c.ns; ++i) {
        const double re = (bits >> (2 * i)) & 1 ? -c.amp(i) : c.amp(i);
        const double im = (bits >> (2 * i + 1)) & 1 ? -c.amp(i) : c.amp(i);
        symbols(i) = {re, im};
    }
    Eigen::VectorXcd an(c.include_an ? c.nz : 0);
    for (int j = 0; j < an.size(); ++j)
        an(j) = {c.an_amp * randn(rng), c.an_amp * randn(rng)};

    Eigen::VectorXcd x = c.f_signal * symbols;
    if (an.size()) x += c.f_an * an;

    PointTally tally;
    tally.tx_power = x.squaredNorm();

    Eigen::VectorXcd noise_b(c.n), noise_e(c.n);
    const double nb = c.sigma_b / std::sqrt(2.0), ne = sigma_e / std::sqrt(2.0);
    for (int i = 0; i < c.n; ++i) noise_b(i) = {nb * randn(rng), nb * randn(rng)};
    for (int i = 0; i < c.n; ++i) noise_e(i) = {ne * randn(rng), ne * randn(rng)};

    const Eigen::VectorXcd y_bob = c.h_bob * x + noise_b;
    Eigen::VectorXcd decomposed = c.bob_rows * y_bob;
    if (an.size()) decomposed -= c.g_an * an;  // exact cancellation of the pre-known AN

    const Eigen::VectorXcd y_eve = c.h_eve * x + noise_e;
    const Eigen::VectorXcd eve_hat = w_rows * y_eve;

    for (int i = 0; i < c.ns; ++i) {
        const std::complex<double> s_bob = decomposed(i) / c.g_signal(i, i);
        const bool b0 = (bits >> (2 * i)) & 1, b1 = (bits >> (2 * i + 1)) & 1;
        tally.err_bob += (s_bob.real() < 0.0) != b0;
        tally.err_bob += (s_bob.imag() < 0.0) != b1;
        tally.err_eve += (eve_hat(i).real() < 0.0) != b0;
        tally.err_eve += (eve_hat(i).imag() < 0.0) != b1;
    }
    return tally;
}

BerCurve simulate(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                  const PowerAllocation& power, const PhaseShifts& theta,
                  const NoiseConfig& noise, const MonteCarloConfig& mc, bool parallel) {
    mc.validate();
    theta.validate();
    plan.validate(basis);
    if (power.p.size() != plan.n_signal())
        throw std::invalid_argument("power vector length does not match the signal set");
    const CurveContext c = make_context(ch, basis, plan, power, theta, noise, mc);

    BerCurve curve;
    curve.trials = mc.trials;
    for (std::size_t pi = 0; pi < mc.snr_grid_db.size(); ++pi) {
        BerPoint point;
        point.snr_db = mc.snr_grid_db[pi];
        point.sigma_e2 =
            c.desired_power_eve / (c.n * std::pow(10.0, point.snr_db / 10.0));
        point.total_bits = 2 * c.ns * mc.trials;
        const Eigen::MatrixXcd w_rows =
            eve_equalizer_rows(c, mc.eve_receiver, point.sigma_e2);
        const double sigma_e = std::sqrt(point.sigma_e2);
        const std::uint64_t point_seed = splitmix64(mc.seed + 0x51ed270b * (pi + 1));

        std::int64_t err_bob = 0, err_eve = 0;
        double tx_power = 0.0;
#pragma omp parallel for reduction(+ : err_bob, err_eve, tx_power) schedule(static) \
    if (parallel)
        for (std::int64_t t = 0; t < mc.trials; ++t) {
            const PointTally tally =
                run_trial(c, w_rows, sigma_e, splitmix64(point_seed + static_cast<std::uint64_t>(t)));
            err_bob += tally.err_bob;
            err_eve += tally.err_eve;
            tx_power += tally.tx_power;
        }
        point.bit_errors_bob = err_bob;
        point.bit_errors_eve = err_eve;
        point.mean_tx_power = tx_power / mc.trials;
        curve.points.push_back(point);
    }
    return curve;
}

}  // namespace

BerCurve simulate_ber(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                      const PowerAllocation& power, const PhaseShifts& theta,
                      const NoiseConfig& noise, const MonteCarloConfig& mc) {
    return simulate(ch, basis, plan, power, theta, noise, mc, true);
}

BerCurve simulate_ber_serial(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                             const PowerAllocation& power, const PhaseShifts& theta,
                             const NoiseConfig& noise, const MonteCarloConfig& mc) {
    return simulate(ch, basis, plan, power, theta, noise, mc, false);
}

}  // namespace oamris
