#pragma once

#include <vector>

#include "heis/config.hpp"
#include "heis/point.hpp"
#include "heis/quad.hpp"
#include "heis/radial.hpp"
#include "heis/scan.hpp"

namespace heis {

// Koranyi inversion I(y) = -(y_z(|y_z|^2 + i y_t), y_t)/||y||^4.
// Involution; swaps 0 and infinity; ||I(y)|| = 1/||y||.
Point inversion(const Point& y);

struct MobiusParams {
    Point x;
    Point a;
    double rho = 1.0;

    void validate() const;
};

// T_{x,a,rho}(y) = delta_rho([I(a^-1 x)]^-1 . I(a^-1 y)).
// T(x) = 0, T(a) = infinity, T(infinity) = delta_rho([I(a^-1 x)]^-1).
class Mobius {
  public:
    explicit Mobius(MobiusParams params);

    Point operator()(const Point& y) const;
    Point inverse(const Point& w) const;

    // J_T(y) = rho^4 / d(a,y)^8
    double jacobian(const Point& y) const;

    // T(infinity); also the center of every sphere image T(dB(a,r)).
    const Point& center_at_infinity() const { return center_; }
    const MobiusParams& params() const { return params_; }

  private:
    MobiusParams params_;
    Point c_;       // I(a^-1 x)
    Point c_inv_;   // [I(a^-1 x)]^-1
    Point center_;  // delta_rho(c_inv_)
};

// Max over samples of dB(a,r) of | d(T(p), T(infinity)) - rho/r |.
ScanReport sphere_image_check(const MobiusParams& params, double r, const QuadSpec& quad);

// T-image of a dense boundary grid; nearest-mesh-point distances approximate
// d(., dT(B)) from above by at most the reported mesh gap.
class BoundaryImageMesh {
  public:
    BoundaryImageMesh(const Mobius& T, int n_alpha, int n_phi);

    double min_dist(const Point& p) const;
    double mesh_gap() const { return gap_; }  // max spacing between adjacent images
    double min_norm() const { return min_norm_; }
    double max_norm() const { return max_norm_; }

  private:
    std::vector<Point> pts_;
    double gap_ = 0.0;
    double min_norm_ = 0.0;
    double max_norm_ = 0.0;
};

struct CorkscrewResult {
    Point point;
    double dist_boundary = 0.0;
    double dist_omega = 0.0;
    double achieved_m0 = 0.0;  // r / dist_boundary
};

// Interior corkscrew at scale r: p in B with r/M0 <= d(p,dB) <= d(p,w) <= r.
// Candidates along the radial curve, verified a posteriori.
CorkscrewResult corkscrew_interior(const SpherePoint& w, double r, const Calibration& cal,
                                   const QuadSpec& quad);

// Exterior corkscrew: candidates on the outward radial extension, dilated
// rays and vertical offsets, verified a posteriori.
CorkscrewResult corkscrew_exterior(const SpherePoint& w, double r, const Calibration& cal,
                                   const QuadSpec& quad);

struct CanonicalMap {
    MobiusParams params;
    double rho = 0.0;          // d(x, dB)
    SpherePoint omega;         // nearest boundary point
    CorkscrewResult anchor;    // exterior corkscrew used as the pole a
};

// The canonical data (d1)-(d3): rho_x = d(x,dB), omega_x the nearest boundary
// point, a_x an exterior corkscrew at scale M0*N*rho_x.  Requires ||x|| > R*.
CanonicalMap canonical_T(const Point& x, const Calibration& cal, const QuadSpec& quad);

// Distribution of |D_H f(y)| / (|D_H (f o T^-1)(T(y))| J_T(y)^{1/4}) over
// random samples of B(embed(w), r) cap B.
ScanReport conjugation_transfer_check(const PointMap& f, const MobiusParams& params,
                                      const SpherePoint& w, double r, const QuadSpec& quad);

}  // namespace heis
