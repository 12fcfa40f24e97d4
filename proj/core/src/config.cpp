#include "heis/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "heis/scan.hpp"

namespace heis {

namespace {

struct Field {
    const char* key;
    double Calibration::* member;
};

constexpr Field kFields[] = {
    {"kappa", &Calibration::kappa},
    {"m0", &Calibration::m0},
    {"n_sep", &Calibration::n_sep},
    {"r0", &Calibration::r0},
    {"r_star", &Calibration::r_star},
    {"big_r_star", &Calibration::big_r_star},
    {"c_norm", &Calibration::c_norm},
    {"m_ball", &Calibration::m_ball},
    {"big_m_ball", &Calibration::big_m_ball},
};

}  // namespace

void Calibration::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("Calibration: cannot write " + path);
    for (const Field& fl : kFields) f << fl.key << "=" << format_double(this->*fl.member) << "\n";
}

Calibration Calibration::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("Calibration: cannot read " + path);
    std::map<std::string, double> kv;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("Calibration: malformed line: " + line);
        kv[line.substr(0, eq)] = std::stod(line.substr(eq + 1));
    }
    Calibration cal;
    for (const Field& fl : kFields) {
        const auto it = kv.find(fl.key);
        if (it != kv.end()) cal.*fl.member = it->second;
    }
    return cal;
}

const Calibration& Calibration::defaults() {
    static const Calibration cal{};
    return cal;
}

}  // namespace heis
