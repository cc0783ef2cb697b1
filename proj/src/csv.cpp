#include "oamris/csv.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace oamris {

CsvWriter::CsvWriter(const std::string& path, std::uint64_t config_fingerprint) : path_(path) {
    out_.open(path, std::ios::trunc);
    if (!out_) throw IoError("cannot open output file '" + path + "'");
    char fp[32];
    std::snprintf(fp, sizeof(fp), "%016" PRIx64, config_fingerprint);
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    out_ << "# config_fingerprint=" << fp << '\n'
         << "# timestamp="
         << std::chrono::duration_cast<std::chrono::milliseconds>(now).count() << '\n';
}

void CsvWriter::header(std::initializer_list<std::string> columns) {
    bool first = true;
    for (const auto& c : columns) {
        if (!first) out_ << ',';
        out_ << c;
        first = false;
    }
    out_ << '\n';
    if (!out_) throw IoError("write failed on '" + path_ + "'");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw IoError("write failed on '" + path_ + "'");
}

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string CsvWriter::num(std::int64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%" PRId64, v);
    return buf;
}

std::string csv_body_without_timestamp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream body;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("# timestamp=", 0) != 0) body << line << '\n';
    return body.str();
}

}  // namespace oamris
