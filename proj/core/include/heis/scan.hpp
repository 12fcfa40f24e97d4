#pragma once

#include <string>
#include <utility>
#include <vector>

namespace heis {

// Structured result of a verification scan: tabular cells plus a summary.
// Serializes to the report.json / tables.csv pair emitted by the runner.
struct ScanReport {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> summary;
    double tolerance = 0.0;
    bool pass = true;

    void param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
    void param(const std::string& key, double value);
    void stat(const std::string& key, double value) { summary.emplace_back(key, value); }

    double stat_value(const std::string& key) const;  // throws if missing

    std::string to_json() const;
    std::string to_csv() const;
    void write(const std::string& out_dir) const;  // report.json + tables.csv
};

// %.17g formatting shared by every artifact writer (bit-stable round trip).
std::string format_double(double v);

}  // namespace heis
