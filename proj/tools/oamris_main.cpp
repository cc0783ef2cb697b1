// Experiment CLI:
//   oamris <experiment> [--config <file>] [--out <dir>] [--seed <n>] [--threads <n>]
// Experiments: convergence, sweep-zr, sweep-q, sweep-power, ber, selftest.
// Exit codes: 0 ok, 1 config error, 2 solver stagnation, 3 I/O error.
#include <cstdio>
#include <exception>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "oamris/config.hpp"
#include "oamris/csv.hpp"
#include "oamris/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted OAM secure-communication simulator"};
    std::string experiment;
    std::string config_path;
    std::string out_dir = "out";
    std::int64_t seed = -1;
    int threads = 0;
    app.add_option("experiment", experiment,
                   "one of: convergence, sweep-zr, sweep-q, sweep-power, ber, selftest")
        ->required();
    app.add_option("--config", config_path, "config file (defaults to built-in settings)");
    app.add_option("--out", out_dir, "output directory for CSV artifacts");
    app.add_option("--seed", seed, "override scheme.seed");
    app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");
    CLI11_PARSE(app, argc, argv);

    if (threads > 0) omp_set_num_threads(threads);

    try {
        oamris::Config cfg =
            config_path.empty() ? oamris::Config::defaults() : oamris::Config::from_file(config_path);
        if (seed >= 0) cfg.set("scheme.seed", std::to_string(seed));
        const oamris::ExperimentSpec spec = oamris::build_spec(cfg);
        return oamris::run_experiment(spec, experiment, out_dir);
    } catch (const oamris::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return oamris::kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return oamris::kExitConfigError;
    } catch (const oamris::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return oamris::kExitIoError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return oamris::kExitStagnation;
    }
}
