// Experiment driver: translates a Config into domain objects and runs the
// sweep/convergence/BER experiments, emitting CSV artifacts.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oamris/config.hpp"
#include "oamris/metrics.hpp"
#include "oamris/montecarlo.hpp"
#include "oamris/pipeline.hpp"

namespace oamris {

struct ExperimentSpec {
    SceneGeometry scene;
    ChannelParams channel;
    std::vector<int> low_modes, high_modes;
    int n_signal = 3;
    int n_an = 3;
    std::int64_t combo_index = 0;
    PowerBudget budget;
    NoiseConfig noise;
    SchemeConfig scheme;
    MonteCarloConfig mc;
    std::vector<double> zr_grid;
    std::vector<int> q_grid;
    std::vector<double> pt_grid_dbm;
    std::vector<double> noise_grid_dbm;
    std::vector<Scheme> sweep_schemes;
    std::uint64_t fingerprint = 0;
};

// Validates every field and rejects unknown config keys. Throws ConfigError.
ExperimentSpec build_spec(const Config& cfg);

ModePlan spec_plan(const ExperimentSpec& spec);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitStagnation = 2;
inline constexpr int kExitIoError = 3;

// Known experiment names: convergence, sweep-zr, sweep-q, sweep-power, ber,
// selftest. Returns kExitOk or kExitStagnation (artifacts are still written
// when a subsolver stagnates); config and I/O problems are thrown.
int run_experiment(const ExperimentSpec& spec, const std::string& experiment,
                   const std::string& out_dir);

}  // namespace oamris
