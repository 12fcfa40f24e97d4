#pragma once

#include <functional>

#include "heis/point.hpp"
#include "heis/quad.hpp"

namespace heis {

// Chart of the unit Koranyi sphere minus the characteristic points (0,0,+-1):
//   (alpha, phi) |-> (sqrt(cos a) e^{i phi}, sin a),  alpha in (-pi/2, pi/2).
struct SpherePoint {
    double alpha = 0.0;
    double phi = 0.0;
};

Point embed(const SpherePoint& w);

// Inverse chart.  Requires | ||p|| - 1 | < 1e-9 and |z| > 0.
SpherePoint project(const Point& p);

// The three boundary measures, as densities w(alpha) against d(alpha) d(phi):
//   Sigma0 -> 1   (polar-coordinates measure sigma_0)
//   Sigma  -> cos^2 alpha   (modulus measure sigma)
//   S3     -> sqrt(cos alpha)   (spherical Hausdorff measure)
enum class MeasureKind { Sigma0, Sigma, S3 };

double density(MeasureKind kind, double alpha);

using BoundaryFn = std::function<double(const SpherePoint&)>;

// Tensor-product quadrature of g * w(alpha) over the chart rectangle.
// Open midpoint rule in alpha (never evaluates at the characteristic points),
// midpoint in phi.
double integrate_sphere(const BoundaryFn& g, MeasureKind kind, const QuadSpec& quad);

// Same integral with panels graded dyadically toward `focus` in both chart
// directions; resolves integrable point singularities (e.g. the pole of a
// boundary-singular map).
double integrate_sphere_graded(const BoundaryFn& g, MeasureKind kind, const SpherePoint& focus,
                               int levels = 30, int per_panel = 6);

// Measure of B(embed(w), r) on the boundary.  The chart window enclosing the
// metric ball is grown adaptively, then the indicator is integrated on an
// n_alpha x n_phi midpoint grid inside the window.
double sphere_ball_measure(const SpherePoint& w, double r, MeasureKind kind,
                           const QuadSpec& quad);

// Mean of g over B(center, r) on the boundary w.r.t. S3; helper shared by the
// maximal operator and its tests.
double sphere_ball_average(const BoundaryFn& g, const SpherePoint& center, double r,
                           const QuadSpec& quad);

// Non-centred Hardy-Littlewood maximal operator approximated from below:
// sup of S3-averages over balls B(w', 2^-k) containing w, with centers on a
// coarse chart grid and dyadic radii.
double hl_maximal(const BoundaryFn& g, const SpherePoint& w, const QuadSpec& quad);

inline constexpr double kSphereDiameter = 2.0;  // diam of the unit sphere: d((z,t),(-z,-t)) <= 2, attained

}  // namespace heis
