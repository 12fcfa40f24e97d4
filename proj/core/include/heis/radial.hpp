#pragma once

#include <functional>
#include <optional>

#include "heis/point.hpp"
#include "heis/quad.hpp"
#include "heis/scan.hpp"
#include "heis/sphere.hpp"

namespace heis {

// gamma(s, w) = (s z e^{-i (t/|z|^2) log s}, s^2 t) for w = (z,t) on the unit
// sphere; in chart coordinates the spiral phase is phi - tan(alpha) log s.
// ||gamma(s, w)|| = s for all w.
Point radial_point(double s, const SpherePoint& w);

// Frame norm of d(gamma)/ds: 1/|z| = 1/sqrt(cos alpha).
double radial_speed(const SpherePoint& w);

// Inverse of (s, w) |-> gamma(s, w).  Requires |z| > 0 and q != 0.
struct RadialCoords {
    double s = 0.0;
    SpherePoint omega;
};
RadialCoords project_radial(const Point& q);

// d(p, w~)^4 where p has Koranyi-polar data (s, alpha) and w~ = (alpha~, .) is
// a sphere point at azimuth phi relative to the planar argument of p.
// Evaluated as a sum of squares; free of the cancellation that the fully
// expanded quartic suffers from when the two points are close.
double closed_form_dist4(double s, double alpha, double alpha_t, double phi);

double closed_form_dist(double s, double alpha, double alpha_t, double phi);

// The same quartic multiplied out (the long algebraic form).  Kept for
// cross-checks; throws if the radicand drops below -1e-12.
double closed_form_dist_expanded(double s, double alpha, double alpha_t, double phi);

struct BoundaryDistanceResult {
    double value = 0.0;
    SpherePoint argmin;
    int iterations = 0;
    Point argmin_point;  // exact minimizer in ambient coordinates
};

// Distance from q to the unit Koranyi sphere, for arbitrary q (inside or
// outside).  Coarse chart grid then projected tangent-plane Newton on the
// sphere; `hint` skips the coarse stage (fast path for warm-started scans).
BoundaryDistanceResult dist_to_sphere(const Point& q, const QuadSpec& quad,
                                      const Point* hint = nullptr);

// Spec'd interior version: requires ||q|| < 1.
BoundaryDistanceResult dist_to_boundary(const Point& q, const QuadSpec& quad);

// Largest s in (0,1) with d(gamma(s,w), w) = rho.  Satisfies s >= 1 - rho.
double hitting_param(const SpherePoint& w, double rho);

// d(gamma(s,w), w) / d(gamma(s,w), dB); equals 1 on the equator.
double nt_ratio(double s, const SpherePoint& w, const QuadSpec& quad);

// Scan of nt_ratio over a log-graded (alpha, s) grid.  alpha approaches the
// characteristic points down to pi/2 - 1e-3 and s approaches 1 up to 1e-6;
// the scan reports kappa_hat = sup(ratio) - 1 and the argmax cell.
// Columns: alpha, s, d_omega, d_boundary, ratio.
ScanReport kappa_scan(const QuadSpec& grid);

// Iterated quadrature int u(gamma(s,w)) s^3 ds dsigma0(w) over s in (a,b):
// Gauss-Legendre in s, midpoint chart rule on the sphere.
double polar_integrate(const std::function<double(const Point&)>& u, double a, double b,
                       const QuadSpec& quad);

// Radius rho_r(t) of the circle Sigma_r cap {third coordinate = t}; solves
// d((rho,0,t), dB) = 1-r by bisection.  Admissible |t| <= 1-(1-r)^2.
double level_set_radius(double r, double t, const QuadSpec& quad);

// M(r,f) = sup over Sigma_r of ||f||, sampled on a (t, rotation) grid.
double big_M(double r, const std::function<Point(const Point&)>& f, const QuadSpec& quad);

}  // namespace heis
