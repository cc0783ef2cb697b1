// Flat key-value experiment configuration with dotted section keys, plus the
// unit conversions used at the config boundary.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oamris {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Powers cross the config boundary in dBm and are watts internally.
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

// Text format: one `key = value` per line, `#` starts a comment, blank lines
// ignored. Lists are comma-separated. Keys read through the typed getters are
// tracked so that unknown (typo'd) keys can be reported.
class Config {
public:
    static Config defaults();  // shipped experiment defaults
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    void merge(const Config& overrides);
    bool has(const std::string& key) const;

    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    std::int64_t get_int64(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<int> get_int_list(const std::string& key) const;
    std::vector<std::string> get_string_list(const std::string& key) const;
    Eigen::Vector3d get_vec3(const std::string& key) const;

    // Keys present but never read; used to reject misspelled settings.
    std::vector<std::string> untouched_keys() const;

    // Canonical sorted `key = value` dump and its FNV-1a fingerprint; both
    // are deterministic functions of the stored values.
    std::string canonical_dump() const;
    std::uint64_t fingerprint() const;

private:
    const std::string& raw(const std::string& key) const;
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> touched_;
};

}  // namespace oamris
