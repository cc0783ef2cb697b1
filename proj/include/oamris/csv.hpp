// CSV emission with a reproducibility preamble.
#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace oamris {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every file starts with a config-fingerprint comment (deterministic) and a
// timestamp comment (the only line that differs between identical runs),
// then the header row.
class CsvWriter {
public:
    CsvWriter(const std::string& path, std::uint64_t config_fingerprint);

    void header(std::initializer_list<std::string> columns);
    void row(const std::vector<std::string>& cells);

    // Fixed shortest-roundtrip formatting so identical values always print
    // identically.
    static std::string num(double v);
    static std::string num(std::int64_t v);

private:
    std::ofstream out_;
    std::string path_;
};

// File body with `# timestamp=` lines removed; two runs of the same
// experiment with the same config and seed compare byte-equal on this.
std::string csv_body_without_timestamp(const std::string& path);

}  // namespace oamris
