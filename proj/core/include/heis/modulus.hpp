#pragma once

#include <functional>
#include <string>
#include <vector>

#include "heis/point.hpp"
#include "heis/quad.hpp"
#include "heis/scan.hpp"
#include "heis/sphere.hpp"

namespace heis {

// Nonnegative Borel density with annular support; `eval` returns 0 outside.
struct DensityField {
    std::function<double(const Point&)> eval;
    std::string support;
    double s_lo = 0.0;
    double s_hi = 1.0;
};

// Extremal density of the ring a < ||q|| < b:
//   rho(q) = (log(b/a))^-1 |z(q)| / ||q||^2 on the closed annulus, 0 outside.
// Its line integral along every radial curve crossing the ring equals 1 and
// its 4-energy is pi^2 (log b/a)^-3.
DensityField ring_extremal_density(double a, double b);

// Extremal density of the family of radial curves joining dB(0,r) to E:
// the ring density restricted to the radial cone over E.
using BoundarySet = std::function<bool(const SpherePoint&)>;
DensityField radial_cone_density(const BoundarySet& E, double r);

// Polyline with parameter values and optional analytic frame speeds.
struct DiscretizedCurve {
    std::string name;
    std::vector<double> params;
    std::vector<Point> points;
    std::vector<double> speeds;  // empty -> use metric chord lengths
};

// Radial curve segment s in [a,b], uniform discretization.
DiscretizedCurve make_radial_curve(const SpherePoint& w, double a, double b, int n);

// Straight chord between two points (Euclidean interpolation), for
// admissibility spot checks off the radial family.
DiscretizedCurve make_chord(const Point& p, const Point& q, int n);

double line_integral(const DensityField& rho, const DiscretizedCurve& curve);

// Min line integral over the family; pass iff >= 1 - 1e-6.
ScanReport admissibility_check(const DensityField& rho, const std::vector<DiscretizedCurve>& curves);

// 4-energy by polar quadrature over the support annulus.  The s-resolution is
// doubled once as a tail test; a mismatch beyond max(10 rel_tol, 1e-9)
// signals divergence.
double energy(const DensityField& rho, const QuadSpec& quad);

// Energy of the cone-restricted extremal density; equals
// sigma(E) (log 1/r)^-3 with sigma(E) from sphere quadrature.
double radial_family_modulus(const BoundarySet& E, double r, const QuadSpec& quad);

}  // namespace heis
