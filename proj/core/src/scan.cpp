#include "heis/scan.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace heis {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ScanReport::param(const std::string& key, double value) {
    params.emplace_back(key, format_double(value));
}

double ScanReport::stat_value(const std::string& key) const {
    for (const auto& [k, v] : summary)
        if (k == key) return v;
    throw std::out_of_range("ScanReport: no summary stat named " + key);
}

std::string ScanReport::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    j["columns"] = columns;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json c = nlohmann::ordered_json::array();
        for (double v : row) c.push_back(v);
        cells.push_back(c);
    }
    j["cells"] = cells;
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (const auto& [k, v] : summary) s[k] = v;
    s["tolerance"] = tolerance;
    s["pass"] = pass;
    j["summary"] = s;
    return j.dump(2) + "\n";
}

std::string ScanReport::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

void ScanReport::write(const std::string& out_dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream f(fs::path(out_dir) / "report.json", std::ios::binary);
        if (!f) throw std::runtime_error("ScanReport: cannot write report.json in " + out_dir);
        f << to_json();
    }
    {
        std::ofstream f(fs::path(out_dir) / "tables.csv", std::ios::binary);
        if (!f) throw std::runtime_error("ScanReport: cannot write tables.csv in " + out_dir);
        f << to_csv();
    }
}

}  // namespace heis
