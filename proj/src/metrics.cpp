#include "oamris/metrics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace oamris {

namespace {

constexpr double kUnitModulusTol = 1e-9;

void check_dims(const ChannelSet& ch, const OamBasis& basis, const PhaseShifts& theta) {
    if (ch.n() != basis.n())
        throw std::invalid_argument("channel/basis dimension mismatch: N=" +
                                    std::to_string(ch.n()) + " vs " + std::to_string(basis.n()));
    if (ch.q() != theta.q())
        throw std::invalid_argument("channel/phase dimension mismatch: Q=" +
                                    std::to_string(ch.q()) + " vs " + std::to_string(theta.q()));
}

void check_power(const ModePlan& plan, const PowerAllocation& power) {
    if (power.p.size() != plan.n_signal())
        throw std::invalid_argument("power vector length " + std::to_string(power.p.size()) +
                                    " does not match signal set size " +
                                    std::to_string(plan.n_signal()));
}

}  // namespace

void NoiseConfig::validate() const {
    if (sigma_b2 <= 0.0) throw std::invalid_argument("noise.sigma_b2: must be > 0");
    if (sigma_e2 <= 0.0) throw std::invalid_argument("noise.sigma_e2: must be > 0");
}

PhaseShifts PhaseShifts::all_ones(int q) {
    PhaseShifts out;
    out.theta = Eigen::VectorXcd::Ones(q);
    return out;
}

PhaseShifts PhaseShifts::random(int q, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    PhaseShifts out;
    out.theta.resize(q);
    for (int i = 0; i < q; ++i) out.theta(i) = std::polar(1.0, angle(rng));
    return out;
}

void PhaseShifts::validate() const {
    for (int i = 0; i < q(); ++i)
        if (std::abs(std::abs(theta(i)) - 1.0) > kUnitModulusTol)
            throw std::invalid_argument("phase shift " + std::to_string(i) +
                                        " is off the unit circle");
}

PowerAllocation PowerAllocation::equal_split(const ModePlan& plan, double rho, double total_power,
                                             double floor) {
    PowerAllocation out;
    out.rho = rho;
    out.total_power = total_power;
    out.floor = floor;
    out.p = Eigen::VectorXd::Constant(plan.n_signal(), rho * total_power / plan.n_signal());
    out.an_variance = plan.n_an() > 0 ? (1.0 - rho) * total_power / plan.n_an() : 0.0;
    return out;
}

void PowerAllocation::validate() const {
    if (rho <= 0.0 || rho > 1.0) throw std::invalid_argument("power.rho: must be in (0,1]");
    if (total_power <= 0.0) throw std::invalid_argument("power.total_power: must be > 0");
    if (p.sum() > budget() + 1e-9)
        throw std::invalid_argument("power allocation exceeds the signal budget");
    for (int i = 0; i < p.size(); ++i)
        if (p(i) < floor - 1e-12)
            throw std::invalid_argument("power " + std::to_string(i) + " below the floor");
}

Eigen::MatrixXcd composite_bob_channel(const ChannelSet& ch, const PhaseShifts& theta) {
    if (ch.q() == 0) return ch.h_ab;
    return ch.h_ab + ch.h_rb * theta.theta.conjugate().asDiagonal() * ch.h_ar;
}

Eigen::MatrixXcd composite_eve_channel(const ChannelSet& ch, const PhaseShifts& theta) {
    if (ch.q() == 0) return ch.h_ae;
    return ch.h_ae + ch.h_re * theta.theta.conjugate().asDiagonal() * ch.h_ar;
}

Eigen::VectorXd sinr_bob(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                         const PowerAllocation& power, const PhaseShifts& theta,
                         const NoiseConfig& noise) {
    check_dims(ch, basis, theta);
    check_power(plan, power);
    const Eigen::MatrixXcd h = composite_bob_channel(ch, theta);
    const int ns = plan.n_signal();
    const double inv_sigma = 1.0 / std::sqrt(noise.sigma_b2);

    // a(i,j) = sigma_B^{-1} f_{l_i}^H H f_{l_j}
    Eigen::MatrixXcd a(ns, ns);
    for (int i = 0; i < ns; ++i) {
        const Eigen::VectorXcd fi = basis.column(plan.signal_modes[i]);
        for (int j = 0; j < ns; ++j)
            a(i, j) = inv_sigma * (fi.adjoint() * h * basis.column(plan.signal_modes[j]))(0);
    }

    Eigen::VectorXd gamma(ns);
    for (int i = 0; i < ns; ++i) {
        double interference = 0.0;
        for (int j = 0; j < ns; ++j)
            if (j != i) interference += power.p(j) * std::norm(a(i, j));
        gamma(i) = power.p(i) * std::norm(a(i, i)) / (interference + 1.0);
    }
    return gamma;
}

Eigen::VectorXd sinr_eve(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                         const PowerAllocation& power, const PhaseShifts& theta,
                         const NoiseConfig& noise) {
    check_dims(ch, basis, theta);
    check_power(plan, power);
    const Eigen::MatrixXcd h = composite_eve_channel(ch, theta);
    const int ns = plan.n_signal();
    const int nz = plan.n_an();
    const double inv_sigma = 1.0 / std::sqrt(noise.sigma_e2);

    Eigen::VectorXd gamma(ns);
    for (int i = 0; i < ns; ++i) {
        // Eve's observable for mode l is her raw antenna row with the same
        // index that maps l to a basis column; no mode decomposition.
        const Eigen::RowVectorXcd row = h.row(basis.column_of(plan.signal_modes[i]));
        double self = 0.0, interference = 0.0, an = 0.0;
        for (int j = 0; j < ns; ++j) {
            const double g = std::norm(inv_sigma * (row * basis.column(plan.signal_modes[j]))(0));
            if (j == i)
                self = power.p(j) * g;
            else
                interference += power.p(j) * g;
        }
        for (int j = 0; j < nz; ++j)
            an += power.an_variance * std::norm(inv_sigma * (row * basis.column(plan.an_modes[j]))(0));
        gamma(i) = self / (interference + an + 1.0);
    }
    return gamma;
}

RisLinearization build_linearization(const ChannelSet& ch, const OamBasis& basis,
                                     const ModePlan& plan) {
    if (ch.n() != basis.n()) throw std::invalid_argument("channel/basis dimension mismatch");
    RisLinearization linz;
    linz.row_modes = plan.signal_modes;
    linz.col_modes = plan.signal_modes;
    linz.col_modes.insert(linz.col_modes.end(), plan.an_modes.begin(), plan.an_modes.end());

    const int ns = plan.n_signal();
    const int nc = static_cast<int>(linz.col_modes.size());
    const int q = ch.q();
    linz.omega.resize(ns, ns);
    linz.zeta.resize(ns, nc);
    linz.mu.assign(ns, Eigen::MatrixXcd(q, ns));
    linz.eta.assign(ns, Eigen::MatrixXcd(q, nc));

    // Per-column RIS excitations are shared by every row.
    Eigen::MatrixXcd ar_cols(q, nc);
    for (int j = 0; j < nc; ++j)
        ar_cols.col(j) = q > 0 ? Eigen::VectorXcd(ch.h_ar * basis.column(linz.col_modes[j]))
                               : Eigen::VectorXcd(0);

    for (int i = 0; i < ns; ++i) {
        const Eigen::VectorXcd fi = basis.column(plan.signal_modes[i]);
        const Eigen::RowVectorXcd rb_row = fi.adjoint() * ch.h_rb;  // 1 x Q
        const int eve_row = basis.column_of(plan.signal_modes[i]);
        const Eigen::RowVectorXcd re_row = ch.h_re.row(eve_row);
        for (int j = 0; j < nc; ++j) {
            if (j < ns) {
                linz.omega(i, j) = (fi.adjoint() * ch.h_ab * basis.column(linz.col_modes[j]))(0);
                linz.mu[i].col(j) = rb_row.transpose().cwiseProduct(ar_cols.col(j));
            }
            linz.zeta(i, j) = (ch.h_ae.row(eve_row) * basis.column(linz.col_modes[j]))(0);
            linz.eta[i].col(j) = re_row.transpose().cwiseProduct(ar_cols.col(j));
        }
    }
    return linz;
}

Eigen::VectorXd sinr_bob_linearized(const RisLinearization& linz, const Eigen::VectorXd& p,
                                    const PhaseShifts& theta, double sigma_b2) {
    const int ns = linz.n_signal();
    if (p.size() != ns) throw std::invalid_argument("power vector length mismatch");
    Eigen::VectorXd gamma(ns);
    for (int i = 0; i < ns; ++i) {
        double self = 0.0, interference = 0.0;
        for (int j = 0; j < ns; ++j) {
            const std::complex<double> x = linz.omega(i, j) + theta.theta.dot(linz.mu[i].col(j));
            const double term = p(j) * std::norm(x);
            if (j == i)
                self = term;
            else
                interference += term;
        }
        gamma(i) = self / (interference + sigma_b2);
    }
    return gamma;
}

Eigen::VectorXd sinr_eve_linearized(const RisLinearization& linz, const Eigen::VectorXd& p,
                                    double an_variance, const PhaseShifts& theta,
                                    double sigma_e2) {
    const int ns = linz.n_signal();
    const int nc = linz.n_columns();
    if (p.size() != ns) throw std::invalid_argument("power vector length mismatch");
    Eigen::VectorXd gamma(ns);
    for (int i = 0; i < ns; ++i) {
        double self = 0.0, interference = 0.0, an = 0.0;
        for (int j = 0; j < nc; ++j) {
            const std::complex<double> y = linz.zeta(i, j) + theta.theta.dot(linz.eta[i].col(j));
            if (j < ns) {
                const double term = p(j) * std::norm(y);
                if (j == i)
                    self = term;
                else
                    interference += term;
            } else {
                an += an_variance * std::norm(y);
            }
        }
        gamma(i) = self / (interference + an + sigma_e2);
    }
    return gamma;
}

RateReport rates_and_secrecy(const Eigen::VectorXd& gamma_bob, const Eigen::VectorXd& gamma_eve,
                             std::int64_t combinations) {
    RateReport r;
    for (int i = 0; i < gamma_bob.size(); ++i) r.rate_bob_signal += std::log2(1.0 + gamma_bob(i));
    for (int i = 0; i < gamma_eve.size(); ++i) r.rate_eve += std::log2(1.0 + gamma_eve(i));
    r.rate_bob = r.rate_bob_signal + std::log2(static_cast<double>(combinations));
    r.secrecy = r.rate_bob - r.rate_eve;
    r.secrecy_clamped = std::max(r.secrecy, 0.0);
    return r;
}

}  // namespace oamris
