#include "crsslab/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace crsslab {

CsvWriter::CsvWriter(const std::string& path) : path_(path) {
    f_ = std::fopen(path.c_str(), "wb");  // binary keeps LF on every platform
    if (!f_) throw std::runtime_error("cannot open for writing: " + path);
}

CsvWriter::~CsvWriter() { close(); }

void CsvWriter::close() {
    if (f_) {
        if (row_open_) std::fputc('\n', f_);
        std::fclose(f_);
        f_ = nullptr;
    }
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) std::fputc(',', f_);
        std::fputs(names[i].c_str(), f_);
    }
    std::fputc('\n', f_);
}

void CsvWriter::cell(double v) { cell(format_double(v)); }

void CsvWriter::cell(long long v) { cell(std::to_string(v)); }

void CsvWriter::cell(const std::string& v) {
    if (!f_) throw std::runtime_error("CsvWriter: write after close");
    if (row_open_) std::fputc(',', f_);
    std::fputs(v.c_str(), f_);
    row_open_ = true;
}

void CsvWriter::end_row() {
    std::fputc('\n', f_);
    row_open_ = false;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

uint64_t fnv1a64_file(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open for checksum: " + path);
    uint64_t h = 1469598103934665603ull;
    unsigned char buf[1 << 14];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0)
        for (size_t i = 0; i < got; ++i) {
            h ^= buf[i];
            h *= 1099511628211ull;
        }
    std::fclose(f);
    return h;
}

void write_manifest(const Manifest& m, const std::string& path) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.params) params[k] = v;
    j["params"] = params;
    j["tool_version"] = m.tool_version;
    j["wall_time_s"] = m.wall_time_s;
    nlohmann::ordered_json outs = nlohmann::ordered_json::array();
    for (const auto& e : m.outputs) {
        char hex[20];
        std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(e.checksum));
        outs.push_back({{"path", e.path}, {"fnv1a64", hex}});
    }
    j["outputs"] = outs;
    j["warnings"] = m.warnings;
    nlohmann::ordered_json extras = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.extras) extras[k] = v;
    j["extras"] = extras;

    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    const std::string text = j.dump(2) + "\n";
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
}

}  // namespace crsslab
