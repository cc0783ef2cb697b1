#include "oamris/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace oamris {

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Shipped defaults; configs/default.cfg carries the same text.
constexpr const char* kDefaultConfig = R"(# Default experiment configuration.
#
# The wavelength, attenuation scalar, array radii, and the Alice-Eve distance
# are modeling assumptions: 0.1 m wavelength makes the 0.05 m RIS pitch a
# half wavelength, beta folds any antenna gains into one scalar, and the
# 0.2 m radii / 10 m eavesdropper distance define a short-range scenario.

scene.n = 8
scene.r_alice = 0.2
scene.r_bob = 0.2
scene.r_eve = 0.2
scene.alpha_alice = 0
scene.alpha_bob = 0
scene.alpha_eve = 0
scene.bob_center = 0, 0, 20
scene.ris_center = 2, 0, 20
scene.eve_distance = 10
scene.eve_theta = 0
scene.eve_phi = -0.15707963267948966
scene.eve_rot_x = 0.7853981633974483
scene.eve_rot_y = 0.7853981633974483
scene.ris_ny = 10
scene.ris_nz = 15
scene.ris_dy = 0.05
scene.ris_dz = 0.05

channel.beta = 1.0
channel.wavelength = 0.1

plan.low_modes = 0, 1, -1, -2
plan.high_modes = 2, -3, 3, 4
plan.n_signal = 3
plan.n_an = 3
plan.combo_index = 0

power.p_t_dbm = 30
power.rho = 0.9

noise.sigma_b2_dbm = -20
noise.sigma_e2_dbm = -20

scheme.name = proposed
scheme.ao_tol = 1e-4
scheme.ao_max_iter = 50
scheme.seed = 1

mc.trials = 100000
mc.snr_grid_db = 0, 5, 10, 15, 20
mc.eve_receiver = lmmse
mc.include_an = true

sweep.zr_grid = 0, 5, 10, 15, 20, 25, 30
sweep.q_grid = 30, 60, 90, 120, 150
sweep.pt_grid_dbm = 20, 25, 30, 35, 40
sweep.noise_grid_dbm = -30, -20, -10
sweep.schemes = proposed, equal-power, no-an, random-phase
)";

}  // namespace

Config Config::defaults() { return from_string(kDefaultConfig); }

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return from_string(text.str());
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

void Config::merge(const Config& overrides) {
    for (const auto& [k, v] : overrides.values_) values_[k] = v;
}

bool Config::has(const std::string& key) const {
    touched_.insert(key);
    return values_.count(key) > 0;
}

const std::string& Config::raw(const std::string& key) const {
    touched_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string& v = raw(key);
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': '" + v + "' is not a number");
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    const double d = get_double(key);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw ConfigError("config key '" + key + "': expected an integer");
    return i;
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::int64_t Config::get_int64(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const double d = get_double(key);
    const auto i = static_cast<std::int64_t>(d);
    if (static_cast<double>(i) != d)
        throw ConfigError("config key '" + key + "': expected an integer");
    return i;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = raw(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "': '" + v + "' is not a boolean");
}

std::string Config::get_string(const std::string& key) const { return raw(key); }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    const std::string& v = raw(key);
    std::vector<double> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("config key '" + key + "': empty list element");
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

std::vector<int> Config::get_int_list(const std::string& key) const {
    std::vector<int> out;
    for (double d : get_double_list(key)) {
        const int i = static_cast<int>(d);
        if (static_cast<double>(i) != d)
            throw ConfigError("config key '" + key + "': expected integers");
        out.push_back(i);
    }
    return out;
}

std::vector<std::string> Config::get_string_list(const std::string& key) const {
    const std::string& v = raw(key);
    std::vector<std::string> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("config key '" + key + "': empty list element");
        out.push_back(item);
    }
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

Eigen::Vector3d Config::get_vec3(const std::string& key) const {
    const auto v = get_double_list(key);
    if (v.size() != 3)
        throw ConfigError("config key '" + key + "': expected three comma-separated numbers");
    return {v[0], v[1], v[2]};
}

std::vector<std::string> Config::untouched_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        if (!touched_.count(k)) out.push_back(k);
    return out;
}

std::string Config::canonical_dump() const {
    std::ostringstream out;
    for (const auto& [k, v] : values_) out << k << " = " << v << '\n';
    return out.str();
}

std::uint64_t Config::fingerprint() const {
    std::uint64_t h = 14695981039346656037ULL;
    for (const char ch : canonical_dump()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace oamris
