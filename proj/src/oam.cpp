#include "oamris/oam.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace oamris {

namespace {

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// k-subsets of 0..n-1 in lexicographic order.
std::vector<std::vector<int>> index_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<int> pick(const std::vector<int>& pool, const std::vector<int>& idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(pool[i]);
    return out;
}

void check_counts(const std::vector<int>& low, const std::vector<int>& high, int n_signal,
                  int n_an) {
    if (std::find(low.begin(), low.end(), 0) == low.end())
        throw std::invalid_argument("plan.low_modes: must contain mode 0");
    if (n_signal < 1) throw std::invalid_argument("plan.n_signal: must be >= 1");
    if (n_signal - 1 > static_cast<int>(low.size()) - 1)
        throw std::invalid_argument("plan.n_signal: needs " + std::to_string(n_signal - 1) +
                                    " nonzero low-order modes, have " +
                                    std::to_string(low.size() - 1));
    if (n_an < 0 || n_an > static_cast<int>(high.size()))
        throw std::invalid_argument("plan.n_an: needs " + std::to_string(n_an) +
                                    " high-order modes, have " + std::to_string(high.size()));
}

}  // namespace

int OamBasis::column_of(int mode) const {
    const int nn = n();
    const int lo = -(nn / 2) + 1, hi = nn / 2;
    if (mode < lo || mode > hi)
        throw std::out_of_range("mode label " + std::to_string(mode) + " outside " +
                                std::to_string(lo) + ".." + std::to_string(hi));
    return ((mode % nn) + nn) % nn;
}

OamBasis build_basis(const SceneGeometry& g) {
    g.validate();
    const int n = g.n;
    OamBasis basis;
    basis.mode_order.resize(n);
    basis.f.resize(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        const int mode = (j <= n / 2) ? j : j - n;
        basis.mode_order[j] = mode;
        for (int e = 0; e < n; ++e) {
            const double phi = 2.0 * std::numbers::pi * e / n + g.alpha_alice;
            basis.f(e, j) = std::polar(scale, mode * phi);
        }
    }
    return basis;
}

std::vector<ModeCombination> all_combinations(const std::vector<int>& low_modes,
                                              const std::vector<int>& high_modes, int n_signal,
                                              int n_an) {
    check_counts(low_modes, high_modes, n_signal, n_an);
    std::vector<int> low_nonzero;
    for (int m : low_modes)
        if (m != 0) low_nonzero.push_back(m);

    std::vector<ModeCombination> out;
    for (const auto& si : index_subsets(static_cast<int>(low_nonzero.size()), n_signal - 1)) {
        std::vector<int> signal{0};
        for (int m : pick(low_nonzero, si)) signal.push_back(m);
        for (const auto& ai : index_subsets(static_cast<int>(high_modes.size()), n_an))
            out.emplace_back(signal, pick(high_modes, ai));
    }
    return out;
}

std::int64_t combination_count(const std::vector<int>& low_modes,
                               const std::vector<int>& high_modes, int n_signal, int n_an) {
    check_counts(low_modes, high_modes, n_signal, n_an);
    const std::int64_t total = binomial(static_cast<int>(low_modes.size()) - 1, n_signal - 1) *
                               binomial(static_cast<int>(high_modes.size()), n_an);
    if (total < 1) throw std::invalid_argument("plan: no feasible mode combinations");
    return static_cast<std::int64_t>(std::bit_floor(static_cast<std::uint64_t>(total)));
}

std::vector<ModeCombination> enumerate_combinations(const std::vector<int>& low_modes,
                                                    const std::vector<int>& high_modes,
                                                    int n_signal, int n_an) {
    auto all = all_combinations(low_modes, high_modes, n_signal, n_an);
    all.resize(static_cast<std::size_t>(combination_count(low_modes, high_modes, n_signal, n_an)));
    return all;
}

double ModePlan::index_bits() const { return std::log2(static_cast<double>(combinations)); }

void ModePlan::validate(const OamBasis& basis) const {
    std::set<int> seen;
    for (int m : low_modes) seen.insert(m);
    for (int m : high_modes) {
        if (seen.count(m))
            throw std::invalid_argument("plan: mode " + std::to_string(m) +
                                        " listed as both low and high order");
        seen.insert(m);
    }
    if (seen.size() != basis.mode_order.size())
        throw std::invalid_argument("plan: low/high partition must cover all " +
                                    std::to_string(basis.mode_order.size()) + " modes");
    for (int m : basis.mode_order)
        if (!seen.count(m))
            throw std::invalid_argument("plan: basis mode " + std::to_string(m) +
                                        " missing from partition");
    if (std::find(signal_modes.begin(), signal_modes.end(), 0) == signal_modes.end())
        throw std::invalid_argument("plan: signal set must contain mode 0");
    for (int m : an_modes)
        if (std::find(high_modes.begin(), high_modes.end(), m) == high_modes.end())
            throw std::invalid_argument("plan: AN mode " + std::to_string(m) +
                                        " is not a high-order mode");
}

ModePlan make_plan(const std::vector<int>& low_modes, const std::vector<int>& high_modes,
                   int n_signal, int n_an, std::int64_t combo_index) {
    const auto combos = enumerate_combinations(low_modes, high_modes, n_signal, n_an);
    if (combo_index < 0 || combo_index >= static_cast<std::int64_t>(combos.size()))
        throw std::invalid_argument("plan.combo_index: " + std::to_string(combo_index) +
                                    " outside 0.." + std::to_string(combos.size() - 1));
    ModePlan plan;
    plan.low_modes = low_modes;
    plan.high_modes = high_modes;
    plan.signal_modes = combos[static_cast<std::size_t>(combo_index)].first;
    plan.an_modes = combos[static_cast<std::size_t>(combo_index)].second;
    plan.combinations = static_cast<std::int64_t>(combos.size());
    plan.combo_index = combo_index;
    return plan;
}

ModePlan all_signal_plan(const OamBasis& basis) {
    std::vector<int> low{0};
    for (int m : basis.mode_order)
        if (m != 0) low.push_back(m);
    ModePlan plan;
    plan.low_modes = low;
    plan.signal_modes = low;
    plan.combinations = 1;
    plan.combo_index = 0;
    return plan;
}

}  // namespace oamris
