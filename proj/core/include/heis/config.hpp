#pragma once

#include <string>

namespace heis {

// Geometry constants shared by the Mobius machinery and the Hardy/Carleson
// estimators.  The paper-level statements only assert their existence; the
// defaults below were frozen from a `calibrate` run (seed 1) and can be
// regenerated with the CLI and loaded from a key=value file.
struct Calibration {
    double kappa = 0.35;    // nontangential aperture kappa_hat from kappa-scan
    double m0 = 16.0;       // corkscrew constant M0
    double n_sep = 2.0;     // pole separation factor N (a_x at scale M0*N*rho_x)
    double r0 = 0.25;       // corkscrew scale ceiling r_0
    double r_star = 0.0078125;  // = r0 / (M0 * N)
    double big_r_star = 0.9921875;  // R*: ||x|| > R* forces d(x,dB) < r_star
    double c_norm = 0.05;   // normalization floor from the T_x(gamma) scan
    double m_ball = 0.2;    // empirical bracket B(0,m) subset T_x(B)
    double big_m_ball = 8.0;  // empirical bracket T_x(B) subset B(0,M)

    void save(const std::string& path) const;
    static Calibration load(const std::string& path);
    static const Calibration& defaults();
};

}  // namespace heis
