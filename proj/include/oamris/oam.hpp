// OAM mode bookkeeping: IDFT basis, mode partition, and index-modulation
// combination enumeration.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oamris/geometry.hpp"

namespace oamris {

// IDFT-style beamforming basis of the transmit UCA. Column j carries the
// integer mode label mode_order[j]; labels span -floor(N/2)+1 .. floor(N/2).
struct OamBasis {
    Eigen::MatrixXcd f;           // N x N, unitary
    std::vector<int> mode_order;  // label of each column

    int n() const { return static_cast<int>(f.rows()); }
    // Column index of a mode label; throws std::out_of_range for labels
    // outside the basis range.
    int column_of(int mode) const;
    Eigen::VectorXcd column(int mode) const { return f.col(column_of(mode)); }
};

OamBasis build_basis(const SceneGeometry& g);

// One index-modulation combination: the signal mode set and the AN mode set.
using ModeCombination = std::pair<std::vector<int>, std::vector<int>>;

// All C(|low|-1, n_signal-1) * C(|high|, n_an) combinations in deterministic
// lexicographic order over the positions in the supplied lists. Every signal
// set contains mode 0.
std::vector<ModeCombination> all_combinations(const std::vector<int>& low_modes,
                                              const std::vector<int>& high_modes, int n_signal,
                                              int n_an);

// Number of addressable combinations: the largest power of two not exceeding
// the total count. Throws std::invalid_argument for infeasible counts.
std::int64_t combination_count(const std::vector<int>& low_modes,
                               const std::vector<int>& high_modes, int n_signal, int n_an);

// The addressable list, truncated to the first combination_count() entries;
// the index-to-bits mapping is plain binary over the list position.
std::vector<ModeCombination> enumerate_combinations(const std::vector<int>& low_modes,
                                                    const std::vector<int>& high_modes,
                                                    int n_signal, int n_an);

// Mode partition plus the active combination.
struct ModePlan {
    std::vector<int> low_modes;     // contains 0
    std::vector<int> high_modes;    // disjoint from low_modes
    std::vector<int> signal_modes;  // active signal set, contains 0
    std::vector<int> an_modes;      // active AN set, subset of high_modes
    std::int64_t combinations = 1;  // K
    std::int64_t combo_index = 0;

    int n_signal() const { return static_cast<int>(signal_modes.size()); }
    int n_an() const { return static_cast<int>(an_modes.size()); }
    int n_low() const { return static_cast<int>(low_modes.size()); }
    double index_bits() const;  // log2 K

    // Checks the partition against a basis: disjoint cover of all N modes.
    void validate(const OamBasis& basis) const;
};

ModePlan make_plan(const std::vector<int>& low_modes, const std::vector<int>& high_modes,
                   int n_signal, int n_an, std::int64_t combo_index);

// Degenerate plan used by the no-AN scheme: every mode carries signal,
// no AN modes, K = 1.
ModePlan all_signal_plan(const OamBasis& basis);

}  // namespace oamris
