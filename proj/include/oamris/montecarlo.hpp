// Symbol-level Monte Carlo estimation of Bob's and Eve's QPSK bit error
// rates versus the received SNR at Eve.
#pragma once

#include <cstdint>
#include <vector>

#include "oamris/channel.hpp"
#include "oamris/metrics.hpp"
#include "oamris/oam.hpp"

namespace oamris {

enum class EveReceiver { lmmse, zf };

struct MonteCarloConfig {
    std::int64_t trials = 100000;                      // symbols per SNR point
    std::vector<double> snr_grid_db = {0, 5, 10, 15, 20};
    std::uint64_t seed = 1;
    EveReceiver eve_receiver = EveReceiver::lmmse;
    bool include_an = true;

    void validate() const;
};

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;
};

// 95% Wilson score interval for an error proportion.
ConfidenceInterval wilson_interval(std::int64_t errors, std::int64_t total);

struct BerPoint {
    double snr_db = 0.0;
    double sigma_e2 = 0.0;  // Eve noise variance realizing this SNR [W]
    std::int64_t bit_errors_bob = 0;
    std::int64_t bit_errors_eve = 0;
    std::int64_t total_bits = 0;
    double mean_tx_power = 0.0;  // sample mean of ||x||^2 [W]

    double ber_bob() const { return static_cast<double>(bit_errors_bob) / total_bits; }
    double ber_eve() const { return static_cast<double>(bit_errors_eve) / total_bits; }
    ConfidenceInterval ci_bob() const { return wilson_interval(bit_errors_bob, total_bits); }
    ConfidenceInterval ci_eve() const { return wilson_interval(bit_errors_eve, total_bits); }
};

struct BerCurve {
    std::vector<BerPoint> points;
    std::int64_t trials = 0;
};

// Per trial: Gray-mapped QPSK on the signal modes, complex Gaussian AN on
// the AN modes, IDFT transmit, propagation with fresh noise. Bob decomposes
// with the mode basis, subtracts the pre-known AN exactly, and compensates
// each mode by its composite diagonal coefficient. Eve linearly equalizes
// the composite antenna-domain channel (no knowledge of the basis or the
// mode sets) and detects every stream; errors are counted on the streams
// whose indices carry the desired symbols.
//
// The SNR axis sets Eve's noise: sigma_e2 = desired rx power / (N * snr).
// Bob's noise stays at its configured value. RNG streams are derived per
// trial from the master seed, so results do not depend on scheduling; the
// OpenMP driver and the serial reference produce identical error counts.
BerCurve simulate_ber(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                      const PowerAllocation& power, const PhaseShifts& theta,
                      const NoiseConfig& noise, const MonteCarloConfig& mc);
BerCurve simulate_ber_serial(const ChannelSet& ch, const OamBasis& basis, const ModePlan& plan,
                             const PowerAllocation& power, const PhaseShifts& theta,
                             const NoiseConfig& noise, const MonteCarloConfig& mc);

}  // namespace oamris
