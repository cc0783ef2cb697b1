#include "oamris/experiments.hpp"

#include <exception>
#include <filesystem>
#include <mutex>

#include "oamris/csv.hpp"
#include "oamris/selftest.hpp"

namespace oamris {

namespace {

EveReceiver parse_receiver(const std::string& name) {
    if (name == "lmmse") return EveReceiver::lmmse;
    if (name == "zf") return EveReceiver::zf;
    throw ConfigError("config key 'mc.eve_receiver': expected lmmse or zf, got '" + name + "'");
}

// Sweep bodies run under OpenMP; the first exception is rethrown afterwards.
template <typename Fn>
void parallel_for_points(int count, Fn&& body) {
    std::exception_ptr error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

std::uint64_t point_seed(std::uint64_t base, int index) {
    return base + 1000003ULL * static_cast<std::uint64_t>(index);
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
    return dir;
}

int run_convergence(const ExperimentSpec& spec, const std::filesystem::path& dir) {
    const ChannelSet ch = build_channels(spec.scene, spec.channel);
    const OamBasis basis = build_basis(spec.scene);
    const RunResult res = run_baseline(spec.scheme.scheme, ch, basis, spec_plan(spec), spec.noise,
                                       spec.budget, spec.scheme);
    CsvWriter csv((dir / "convergence.csv").string(), spec.fingerprint);
    csv.header({"iteration", "secrecy_rate_bits"});
    for (std::size_t i = 0; i < res.sr_trace.size(); ++i)
        csv.row({CsvWriter::num(static_cast<std::int64_t>(i)), CsvWriter::num(res.sr_trace[i])});
    return res.stagnated ? kExitStagnation : kExitOk;
}

int run_sweep_zr(const ExperimentSpec& spec, const std::filesystem::path& dir) {
    const OamBasis basis = build_basis(spec.scene);
    const ModePlan plan = spec_plan(spec);
    const int n_schemes = static_cast<int>(spec.sweep_schemes.size());
    const int n_points = static_cast<int>(spec.zr_grid.size());
    std::vector<RunResult> results(static_cast<std::size_t>(n_schemes * n_points));

    parallel_for_points(n_schemes * n_points, [&](int i) {
        const int si = i / n_points, pi = i % n_points;
        SceneGeometry scene = spec.scene;
        scene.ris_center.z() = spec.zr_grid[static_cast<std::size_t>(pi)];
        const ChannelSet ch = build_channels(scene, spec.channel);
        SchemeConfig cfg = spec.scheme;
        cfg.seed = point_seed(spec.scheme.seed, pi);
        results[static_cast<std::size_t>(i)] = run_baseline(
            spec.sweep_schemes[static_cast<std::size_t>(si)], ch, basis, plan, spec.noise,
            spec.budget, cfg);
    });

    bool stagnated = false;
    for (int si = 0; si < n_schemes; ++si) {
        const Scheme s = spec.sweep_schemes[static_cast<std::size_t>(si)];
        CsvWriter csv((dir / ("sweep_zr_" + std::string(scheme_name(s)) + ".csv")).string(),
                      spec.fingerprint);
        csv.header({"z_r_m", "secrecy_rate_bits"});
        for (int pi = 0; pi < n_points; ++pi) {
            const RunResult& r = results[static_cast<std::size_t>(si * n_points + pi)];
            csv.row({CsvWriter::num(spec.zr_grid[static_cast<std::size_t>(pi)]),
                     CsvWriter::num(r.secrecy)});
            stagnated = stagnated || r.stagnated;
        }
    }
    return stagnated ? kExitStagnation : kExitOk;
}

int run_sweep_q(const ExperimentSpec& spec, const std::filesystem::path& dir) {
    const OamBasis basis = build_basis(spec.scene);
    const ModePlan plan = spec_plan(spec);
    for (int q : spec.q_grid)
        if (q <= 0 || q % spec.scene.ris_ny != 0)
            throw ConfigError("config key 'sweep.q_grid': " + std::to_string(q) +
                              " is not a positive multiple of scene.ris_ny");

    const int n_schemes = static_cast<int>(spec.sweep_schemes.size());
    const int n_points = static_cast<int>(spec.q_grid.size());
    std::vector<RunResult> results(static_cast<std::size_t>(n_schemes * n_points));
    parallel_for_points(n_schemes * n_points, [&](int i) {
        const int si = i / n_points, pi = i % n_points;
        SceneGeometry scene = spec.scene;
        scene.ris_nz = spec.q_grid[static_cast<std::size_t>(pi)] / scene.ris_ny;
        const ChannelSet ch = build_channels(scene, spec.channel);
        SchemeConfig cfg = spec.scheme;
        cfg.seed = point_seed(spec.scheme.seed, pi);
        results[static_cast<std::size_t>(i)] = run_baseline(
            spec.sweep_schemes[static_cast<std::size_t>(si)], ch, basis, plan, spec.noise,
            spec.budget, cfg);
    });

    bool stagnated = false;
    for (int si = 0; si < n_schemes; ++si) {
        const Scheme s = spec.sweep_schemes[static_cast<std::size_t>(si)];
        CsvWriter csv((dir / ("sweep_q_" + std::string(scheme_name(s)) + ".csv")).string(),
                      spec.fingerprint);
        csv.header({"q", "secrecy_rate_bits"});
        for (int pi = 0; pi < n_points; ++pi) {
            const RunResult& r = results[static_cast<std::size_t>(si * n_points + pi)];
            csv.row({CsvWriter::num(static_cast<std::int64_t>(spec.q_grid[static_cast<std::size_t>(pi)])),
                     CsvWriter::num(r.secrecy)});
            stagnated = stagnated || r.stagnated;
        }
    }
    return stagnated ? kExitStagnation : kExitOk;
}

int run_sweep_power(const ExperimentSpec& spec, const std::filesystem::path& dir) {
    const OamBasis basis = build_basis(spec.scene);
    const ModePlan plan = spec_plan(spec);
    const ChannelSet ch = build_channels(spec.scene, spec.channel);

    const int n_noise = static_cast<int>(spec.noise_grid_dbm.size());
    const int n_points = static_cast<int>(spec.pt_grid_dbm.size());
    std::vector<RunResult> results(static_cast<std::size_t>(n_noise * n_points));
    parallel_for_points(n_noise * n_points, [&](int i) {
        const int ni = i / n_points, pi = i % n_points;
        NoiseConfig noise;  // both receivers at the same swept level
        noise.sigma_b2 = dbm_to_watt(spec.noise_grid_dbm[static_cast<std::size_t>(ni)]);
        noise.sigma_e2 = noise.sigma_b2;
        PowerBudget budget = spec.budget;
        budget.total_power = dbm_to_watt(spec.pt_grid_dbm[static_cast<std::size_t>(pi)]);
        SchemeConfig cfg = spec.scheme;
        cfg.seed = point_seed(spec.scheme.seed, i);
        results[static_cast<std::size_t>(i)] =
            run_baseline(spec.scheme.scheme, ch, basis, plan, noise, budget, cfg);
    });

    CsvWriter csv((dir / "sweep_power.csv").string(), spec.fingerprint);
    csv.header({"p_t_dbm", "noise_dbm", "secrecy_rate_bits"});
    bool stagnated = false;
    for (int ni = 0; ni < n_noise; ++ni)
        for (int pi = 0; pi < n_points; ++pi) {
            const RunResult& r = results[static_cast<std::size_t>(ni * n_points + pi)];
            csv.row({CsvWriter::num(spec.pt_grid_dbm[static_cast<std::size_t>(pi)]),
                     CsvWriter::num(spec.noise_grid_dbm[static_cast<std::size_t>(ni)]),
                     CsvWriter::num(r.secrecy)});
            stagnated = stagnated || r.stagnated;
        }
    return stagnated ? kExitStagnation : kExitOk;
}

void write_ber_csv(const std::filesystem::path& path, std::uint64_t fingerprint,
                   const BerCurve& curve) {
    CsvWriter csv(path.string(), fingerprint);
    csv.header({"snr_db", "ber_bob", "ber_eve", "ci_low", "ci_high", "trials"});
    for (const BerPoint& p : curve.points) {
        const ConfidenceInterval ci = p.ci_eve();
        csv.row({CsvWriter::num(p.snr_db), CsvWriter::num(p.ber_bob()),
                 CsvWriter::num(p.ber_eve()), CsvWriter::num(ci.low), CsvWriter::num(ci.high),
                 CsvWriter::num(curve.trials)});
    }
}

int run_ber(const ExperimentSpec& spec, const std::filesystem::path& dir) {
    const ChannelSet ch = build_channels(spec.scene, spec.channel);
    const OamBasis basis = build_basis(spec.scene);
    const SchemeInputs in =
        scheme_inputs(spec.scheme.scheme, ch, basis, spec_plan(spec), spec.budget);
    const RunResult opt = run_baseline(spec.scheme.scheme, ch, basis, spec_plan(spec), spec.noise,
                                       spec.budget, spec.scheme);

    PowerAllocation power =
        PowerAllocation::equal_split(in.plan, in.budget.rho, in.budget.total_power,
                                     in.budget.resolved_floor(in.plan.n_signal()));
    power.p = opt.p;

    MonteCarloConfig with_an = spec.mc;
    with_an.include_an = true;
    MonteCarloConfig without_an = spec.mc;
    without_an.include_an = false;
    write_ber_csv(dir / "ber_an.csv", spec.fingerprint,
                  simulate_ber(in.channels, basis, in.plan, power, opt.theta, spec.noise, with_an));
    write_ber_csv(dir / "ber_no_an.csv", spec.fingerprint,
                  simulate_ber(in.channels, basis, in.plan, power, opt.theta, spec.noise,
                               without_an));
    return opt.stagnated ? kExitStagnation : kExitOk;
}

}  // namespace

ExperimentSpec build_spec(const Config& cfg) {
    ExperimentSpec spec;
    spec.scene.n = cfg.get_int("scene.n", spec.scene.n);
    spec.scene.r_alice = cfg.get_double("scene.r_alice", spec.scene.r_alice);
    spec.scene.r_bob = cfg.get_double("scene.r_bob", spec.scene.r_bob);
    spec.scene.r_eve = cfg.get_double("scene.r_eve", spec.scene.r_eve);
    spec.scene.alpha_alice = cfg.get_double("scene.alpha_alice", spec.scene.alpha_alice);
    spec.scene.alpha_bob = cfg.get_double("scene.alpha_bob", spec.scene.alpha_bob);
    spec.scene.alpha_eve = cfg.get_double("scene.alpha_eve", spec.scene.alpha_eve);
    if (cfg.has("scene.bob_center")) spec.scene.bob_center = cfg.get_vec3("scene.bob_center");
    if (cfg.has("scene.ris_center")) spec.scene.ris_center = cfg.get_vec3("scene.ris_center");
    spec.scene.eve_distance = cfg.get_double("scene.eve_distance", spec.scene.eve_distance);
    spec.scene.eve_theta = cfg.get_double("scene.eve_theta", spec.scene.eve_theta);
    spec.scene.eve_phi = cfg.get_double("scene.eve_phi", spec.scene.eve_phi);
    spec.scene.eve_rot_x = cfg.get_double("scene.eve_rot_x", spec.scene.eve_rot_x);
    spec.scene.eve_rot_y = cfg.get_double("scene.eve_rot_y", spec.scene.eve_rot_y);
    spec.scene.ris_ny = cfg.get_int("scene.ris_ny", spec.scene.ris_ny);
    spec.scene.ris_nz = cfg.get_int("scene.ris_nz", spec.scene.ris_nz);
    spec.scene.ris_dy = cfg.get_double("scene.ris_dy", spec.scene.ris_dy);
    spec.scene.ris_dz = cfg.get_double("scene.ris_dz", spec.scene.ris_dz);
    spec.scene.validate();

    spec.channel.beta = cfg.get_double("channel.beta", spec.channel.beta);
    spec.channel.wavelength = cfg.get_double("channel.wavelength", spec.channel.wavelength);
    spec.channel.validate();

    spec.low_modes = cfg.has("plan.low_modes") ? cfg.get_int_list("plan.low_modes")
                                               : std::vector<int>{0, 1, -1, -2};
    spec.high_modes = cfg.has("plan.high_modes") ? cfg.get_int_list("plan.high_modes")
                                                 : std::vector<int>{2, -3, 3, 4};
    spec.n_signal = cfg.get_int("plan.n_signal", spec.n_signal);
    spec.n_an = cfg.get_int("plan.n_an", spec.n_an);
    spec.combo_index = cfg.get_int64("plan.combo_index", spec.combo_index);

    spec.budget.total_power = dbm_to_watt(cfg.get_double("power.p_t_dbm", 30.0));
    spec.budget.rho = cfg.get_double("power.rho", spec.budget.rho);
    spec.budget.floor = cfg.get_double("power.floor_w", -1.0);
    spec.budget.validate();

    spec.noise.sigma_b2 = dbm_to_watt(cfg.get_double("noise.sigma_b2_dbm", -20.0));
    spec.noise.sigma_e2 = dbm_to_watt(cfg.get_double("noise.sigma_e2_dbm", -20.0));
    spec.noise.validate();

    spec.scheme.scheme = parse_scheme(cfg.get_string("scheme.name", "proposed"));
    spec.scheme.ao_tol = cfg.get_double("scheme.ao_tol", spec.scheme.ao_tol);
    spec.scheme.ao_max_iter = cfg.get_int("scheme.ao_max_iter", spec.scheme.ao_max_iter);
    spec.scheme.seed = static_cast<std::uint64_t>(cfg.get_int64("scheme.seed", 1));
    spec.scheme.validate();

    spec.mc.trials = cfg.get_int64("mc.trials", spec.mc.trials);
    if (cfg.has("mc.snr_grid_db")) spec.mc.snr_grid_db = cfg.get_double_list("mc.snr_grid_db");
    spec.mc.seed = spec.scheme.seed;
    spec.mc.eve_receiver = parse_receiver(cfg.get_string("mc.eve_receiver", "lmmse"));
    spec.mc.include_an = cfg.get_bool("mc.include_an", true);
    spec.mc.validate();

    spec.zr_grid = cfg.has("sweep.zr_grid") ? cfg.get_double_list("sweep.zr_grid")
                                            : std::vector<double>{0, 5, 10, 15, 20, 25, 30};
    spec.q_grid = cfg.has("sweep.q_grid") ? cfg.get_int_list("sweep.q_grid")
                                          : std::vector<int>{30, 60, 90, 120, 150};
    spec.pt_grid_dbm = cfg.has("sweep.pt_grid_dbm") ? cfg.get_double_list("sweep.pt_grid_dbm")
                                                    : std::vector<double>{20, 25, 30, 35, 40};
    spec.noise_grid_dbm = cfg.has("sweep.noise_grid_dbm")
                              ? cfg.get_double_list("sweep.noise_grid_dbm")
                              : std::vector<double>{-30, -20, -10};
    const std::vector<std::string> scheme_names =
        cfg.has("sweep.schemes")
            ? cfg.get_string_list("sweep.schemes")
            : std::vector<std::string>{"proposed", "equal-power", "no-an", "random-phase"};
    for (const auto& name : scheme_names) spec.sweep_schemes.push_back(parse_scheme(name));

    const auto unknown = cfg.untouched_keys();
    if (!unknown.empty()) {
        std::string msg = "unknown config key(s):";
        for (const auto& k : unknown) msg += " '" + k + "'";
        throw ConfigError(msg);
    }

    // Fails early if the plan is inconsistent with the scene.
    spec_plan(spec).validate(build_basis(spec.scene));

    spec.fingerprint = cfg.fingerprint();
    return spec;
}

ModePlan spec_plan(const ExperimentSpec& spec) {
    return make_plan(spec.low_modes, spec.high_modes, spec.n_signal, spec.n_an, spec.combo_index);
}

int run_experiment(const ExperimentSpec& spec, const std::string& experiment,
                   const std::string& out_dir) {
    if (experiment == "selftest") return run_selftest() ? kExitOk : 1;
    const std::filesystem::path dir = prepare_out_dir(out_dir);
    if (experiment == "convergence") return run_convergence(spec, dir);
    if (experiment == "sweep-zr") return run_sweep_zr(spec, dir);
    if (experiment == "sweep-q") return run_sweep_q(spec, dir);
    if (experiment == "sweep-power") return run_sweep_power(spec, dir);
    if (experiment == "ber") return run_ber(spec, dir);
    throw ConfigError("unknown experiment '" + experiment + "'");
}

}  // namespace oamris
