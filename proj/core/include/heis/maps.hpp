#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heis/horiz.hpp"
#include "heis/point.hpp"
#include "heis/quad.hpp"
#include "heis/scan.hpp"
#include "heis/sphere.hpp"

namespace heis {

// A named map of the group.  `eval` may be partial (throws off-domain);
// `beta` marks gauge-stretch behaviour ||f(q)|| = ||q||^beta.
struct MapHandle {
    std::string name;
    PointMap eval;
    PointMap inverse;  // may be empty
    std::optional<double> beta;
    bool claimed_conformal = false;

    Point operator()(const Point& q) const { return eval(q); }
};

MapHandle identity_map();
MapHandle translation_map(const Point& c);     // left translation q -> c.q
MapHandle dilation_map(double rho);
MapHandle rotation_map(double theta);
MapHandle inversion_map();                     // pole at 0
MapHandle inversion_shift_map(const Point& a); // q -> I(a^-1 q); conformal on B for a outside closure(B)

// f after g (i.e. q -> f(g(q))).
MapHandle compose(const MapHandle& f, const MapHandle& g, const std::string& name = "");

// Gauge stretch q -> delta_{||q||^{beta-1}}(q); fixes dB pointwise, maps
// dB(0,r) to dB(0,r^beta), extended by 0 -> 0.
MapHandle stretch(double beta);

// f(y) = stretch_beta(I(a^-1 y)) so that ||f(y)|| = d(y,a)^{-beta} exactly.
// Requires ||a|| >= 1; f omits 0 on B.
MapHandle boundary_singular_map(const Point& a, double beta);

// Registry addressable from the CLI: identity | translate | dilate | rotate |
// inversion | invshift | stretch | bsing | stretch_shift.
MapHandle make_model_map(const std::string& name, const std::map<std::string, double>& params);
std::vector<std::string> model_map_names();

struct DistortionEstimate {
    double value = 1.0;      // max/min sphere eccentricity at the smallest radius
    bool stable = false;     // smallest two radii agree within 5%
    std::vector<std::pair<double, double>> per_radius;  // (r, ratio)
};

// H_f(q) probe: for each r, max/min of d(f(q), f(q')) over 64 directions of
// the Koranyi sphere d(q,q') = r.
DistortionEstimate distortion_estimate(const MapHandle& f, const Point& q,
                                       const std::vector<double>& radii);

struct RadialDerivativeCheck {
    double lhs = 0.0;   // |d/ds ||f(gamma(s,w))|| |, central difference
    double rhs = 0.0;   // (|f_I|/||f||) |D_H f| / sqrt(cos alpha)
    double slack = 0.0; // rhs - lhs
};

RadialDerivativeCheck radial_derivative_bound(const MapHandle& f, const SpherePoint& w, double s,
                                              double h = kDefaultFdStep);

// Scan of the bound over an (s, alpha) grid; reports the minimum slack.
ScanReport radial_derivative_scan(const MapHandle& f, const QuadSpec& quad);

// log-log regression of M(delta) = sup_{d(q,dB)=delta} ||f(q)|| / ||f(0)||
// against dyadic delta; returns fitted exponent and constant.
ScanReport growth_estimate_check(const MapHandle& f, const QuadSpec& quad);

}  // namespace heis
