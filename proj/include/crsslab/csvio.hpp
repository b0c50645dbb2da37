#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace crsslab {

// CSV writer pinned to UTF-8, LF line ends, '.' decimal, %.17g numbers, so
// identical inputs give byte-identical files on any locale.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void header(const std::vector<std::string>& names);
    void cell(double v);
    void cell(long long v);
    void cell(const std::string& v);
    void end_row();
    void close();

    const std::string& path() const { return path_; }

private:
    std::string path_;
    FILE* f_;
    bool row_open_ = false;
};

std::string format_double(double v);  // %.17g, nan/inf spelled out

uint64_t fnv1a64_file(const std::string& path);

struct ManifestEntry {
    std::string path;      // as written
    uint64_t checksum;     // FNV-1a 64 of the bytes
};

struct Manifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;  // name -> value, insertion order
    std::string tool_version;
    double wall_time_s = 0.0;
    std::vector<ManifestEntry> outputs;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, std::string>> extras;  // command-specific scalars
};

void write_manifest(const Manifest& m, const std::string& path);

}  // namespace crsslab
