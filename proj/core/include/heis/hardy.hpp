#pragma once

#include <optional>
#include <vector>

#include "heis/horiz.hpp"
#include "heis/maps.hpp"
#include "heis/point.hpp"
#include "heis/quad.hpp"
#include "heis/radial.hpp"
#include "heis/scan.hpp"
#include "heis/sphere.hpp"

namespace heis {

// I_s = int ||f(gamma(s,.))||^p dS3 along an s-grid.
struct HardyProfile {
    double p = 1.0;
    std::vector<double> s_grid;
    std::vector<double> values;
    double sup = 0.0;
    std::optional<double> divergence_slope;  // log I_s vs log(1-s), if I_s grows
};

// `focus`, when set, switches to the graded sphere rule centered there
// (required to resolve maps with a boundary pole).
double hardy_slice(const MapHandle& f, double p, double s, const QuadSpec& quad,
                   const std::optional<SpherePoint>& focus = std::nullopt);
HardyProfile hardy_norm(const MapHandle& f, double p, const std::vector<double>& s_grid,
                        const QuadSpec& quad,
                        const std::optional<SpherePoint>& focus = std::nullopt);

// default grid s = 1 - 2^-k, k = 1..27
std::vector<double> default_hardy_grid();

struct RadialLimit {
    Point value;
    bool converged = false;
    double contraction = 0.0;  // worst ratio of successive differences (last 3)
};

// f(gamma(1-eps, w)) along decreasing eps with a Cauchy diagnostic; declared
// convergent when successive differences contract geometrically (<= 0.75).
RadialLimit radial_limit(const MapHandle& f, const SpherePoint& w,
                         const std::vector<double>& eps_list = {});

// boundary trace proxy used by quadratures: f(gamma(1-eps, w))
Point boundary_trace(const MapHandle& f, const SpherePoint& w, double eps = 1e-6);

// d(q, w) < (1+kappa) d(q, dB) and its boundary dual.
bool in_nt_region(const Point& q, const SpherePoint& w, double kappa, const QuadSpec& quad);
bool shadow_contains(const Point& x, const SpherePoint& w, double kappa, const QuadSpec& quad);

// Grid lower bound for sup over the nontangential region of a scalar field.
// Sample points are gamma(s, w') with w' in a chart neighborhood scaled to
// the cap size; membership uses the sufficient test d(q,w) < (1+kappa)(1-s),
// and the radial curve of w itself is always included.
double nt_maximal_field(const ScalarField& h, const SpherePoint& w, double kappa,
                        const QuadSpec& quad);

// M(f)(w) = sup ||f|| over the region (grid lower bound).
double nt_maximal(const MapHandle& f, const SpherePoint& w, double kappa, const QuadSpec& quad);

struct CarlesonCell {
    SpherePoint center;
    double r = 0.0;
    double mass = 0.0;
    double ratio = 0.0;  // mass / r^{3 alpha}
};

struct CarlesonEstimate {
    double alpha = 1.0;
    std::vector<CarlesonCell> cells;
    double gamma_hat = 0.0;
    std::size_t argmax = 0;

    ScanReport report(const std::string& experiment) const;
};

// Masses of B cap B(w, r) against `density` by Monte Carlo importance
// sampling in the Koranyi box of each ball; deterministic per-cell seeding.
CarlesonEstimate carleson_constant(const ScalarField& density, double alpha,
                                   const std::vector<double>& scales,
                                   const std::vector<SpherePoint>& centers, const QuadSpec& quad);

// Prop-5.6 style density |D_H f|^p / ||f||^p d(q,dB)^{p-1}.
ScalarField qc_carleson_density(const MapHandle& f, double p, const QuadSpec& quad);

// |grad_H log ||f|| |(q), finite differences; throws where ||f|| = 0.
ScalarField grad_log_norm_density(const MapHandle& f);

// ||f||_{A^p} = (int_B ||f||^p dq)^{1/p} by polar quadrature.
double ap_norm(const MapHandle& f, double p, const QuadSpec& quad);

struct EmbeddingCheck {
    double lhs = 0.0;   // int_B ||f||^{alpha p} dmu
    double rhs = 0.0;   // (int_dB ||f*||^p dS3)^alpha
    double ratio = 0.0;
};

EmbeddingCheck embedding_check(const MapHandle& f, const ScalarField& mu_density, double p,
                               double alpha, const QuadSpec& quad);

struct MaxCriterionCheck {
    double lhs = 0.0;      // int ||f*||^p dS3 (after pre-translation f(0) -> 0)
    double rhs = 0.0;      // int_0^1 (1-r)^2 M(r,f)^p dr
    double fitted_c = 0.0; // lhs / rhs
};

MaxCriterionCheck max_criterion_check(const MapHandle& f, double p, const QuadSpec& quad);

}  // namespace heis
