#include "heis/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heis/horiz.hpp"
#include "heis/parallel.hpp"

namespace heis {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}  // namespace

Point inversion(const Point& y) {
    const double n4 = koranyi_norm4(y);
    if (n4 == 0.0) throw std::invalid_argument("inversion: pole at the origin");
    const double z2 = planar_norm_sq(y);
    // y_z (|y_z|^2 + i y_t) = (x|z|^2 - y t) + i (x t + y |z|^2)
    return {-(y.x * z2 - y.y * y.t) / n4, -(y.x * y.t + y.y * z2) / n4, -y.t / n4};
}

void MobiusParams::validate() const {
    if (!(rho > 0.0)) throw std::invalid_argument("MobiusParams: rho must be positive");
    if (dist4(x, a) == 0.0) throw std::invalid_argument("MobiusParams: a must differ from x");
}

Mobius::Mobius(MobiusParams params) : params_(params) {
    params_.validate();
    c_ = inversion(group_mul(group_inverse(params_.a), params_.x));
    c_inv_ = group_inverse(c_);
    center_ = dilate(params_.rho, c_inv_);
}

Point Mobius::operator()(const Point& y) const {
    const Point u = group_mul(group_inverse(params_.a), y);
    if (koranyi_norm4(u) == 0.0) throw std::invalid_argument("Mobius: evaluation at the pole a");
    return dilate(params_.rho, group_mul(c_inv_, inversion(u)));
}

Point Mobius::inverse(const Point& w) const {
    const Point u = group_mul(c_, dilate(1.0 / params_.rho, w));
    if (koranyi_norm4(u) == 0.0)
        throw std::invalid_argument("Mobius::inverse: evaluation at the image of infinity");
    return group_mul(params_.a, inversion(u));
}

double Mobius::jacobian(const Point& y) const {
    const double d2 = std::sqrt(dist4(params_.a, y));  // d(a,y)^2
    if (d2 == 0.0) throw std::invalid_argument("Mobius::jacobian: y = a");
    const double u = params_.rho / d2;
    return (u * u) * (u * u);  // rho^4 / d(a,y)^8
}

ScanReport sphere_image_check(const MobiusParams& params, double r, const QuadSpec& quad) {
    if (!(r > 0.0)) throw std::invalid_argument("sphere_image_check: r must be positive");
    const Mobius T(params);
    const double target = params.rho / r;
    ScanReport rep;
    rep.experiment = "sphere-image";
    rep.param("rho", params.rho);
    rep.param("r", r);
    rep.columns = {"alpha", "phi", "r", "value", "ratio"};
    const int na = std::max(4, quad.n_alpha / 8);
    const int np = std::max(8, quad.n_phi / 4);
    double worst = 0.0;
    for (int i = 0; i < na; ++i) {
        const double alpha = -kHalfPi + kPi * (i + 0.5) / na;
        for (int j = 0; j < np; ++j) {
            const double phi = 2.0 * kPi * (j + 0.5) / np;
            // point of dB(a, r) = a . delta_r(unit sphere)
            const Point p = group_mul(params.a, dilate(r, embed(SpherePoint{alpha, phi})));
            const double got = dist(T(p), T.center_at_infinity());
            const double dev = std::abs(got - target);
            worst = std::max(worst, dev);
            rep.rows.push_back({alpha, phi, r, got, got / target});
        }
    }
    rep.stat("max_deviation", worst);
    rep.stat("target_radius", target);
    rep.tolerance = 1e-10;
    rep.pass = worst < rep.tolerance;
    return rep;
}

BoundaryImageMesh::BoundaryImageMesh(const Mobius& T, int n_alpha, int n_phi) {
    n_alpha = std::max(n_alpha, 8);
    n_phi = std::max(n_phi, 8);
    pts_.reserve(static_cast<std::size_t>(n_alpha) * n_phi + 2);
    min_norm_ = 1e300;
    std::vector<std::vector<Point>> grid(n_alpha, std::vector<Point>(n_phi));
    for (int i = 0; i < n_alpha; ++i) {
        const double alpha = -kHalfPi + kPi * (i + 0.5) / n_alpha;
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * kPi * j / n_phi;
            const Point img = T(embed(SpherePoint{alpha, phi}));
            grid[i][j] = img;
            pts_.push_back(img);
            const double n = koranyi_norm(img);
            min_norm_ = std::min(min_norm_, n);
            max_norm_ = std::max(max_norm_, n);
        }
    }
    // images of the two characteristic points close the mesh
    pts_.push_back(T(Point{0.0, 0.0, 1.0}));
    pts_.push_back(T(Point{0.0, 0.0, -1.0}));
    for (int i = 0; i < n_alpha; ++i)
        for (int j = 0; j < n_phi; ++j) {
            const Point& p = grid[i][j];
            if (i + 1 < n_alpha) gap_ = std::max(gap_, dist(p, grid[i + 1][j]));
            gap_ = std::max(gap_, dist(p, grid[i][(j + 1) % n_phi]));
        }
}

double BoundaryImageMesh::min_dist(const Point& p) const {
    double best = 1e300;
    for (const Point& q : pts_) best = std::min(best, dist4(p, q));
    return fourth_root(best);
}

namespace {

CorkscrewResult verify_candidate(const Point& p, const Point& pw, const QuadSpec& quad) {
    CorkscrewResult res;
    res.point = p;
    res.dist_omega = dist(p, pw);
    res.dist_boundary = dist_to_sphere(p, quad).value;
    return res;
}

}  // namespace

CorkscrewResult corkscrew_interior(const SpherePoint& w, double r, const Calibration& cal,
                                   const QuadSpec& quad) {
    if (!(r > 0.0 && r < cal.r0))
        throw std::invalid_argument("corkscrew_interior: r outside (0, r0)");
    const Point pw = embed(w);
    CorkscrewResult best;
    bool found = false;
    for (double theta : {0.9, 0.7, 0.5, 0.3}) {
        const double s = hitting_param(w, theta * r);
        CorkscrewResult cand = verify_candidate(radial_point(s, w), pw, quad);
        if (cand.dist_omega <= r && cand.dist_boundary >= r / cal.m0 &&
            cand.dist_boundary <= cand.dist_omega + 1e-12) {
            if (!found || cand.dist_boundary > best.dist_boundary) {
                best = cand;
                found = true;
            }
        }
    }
    if (!found) throw std::runtime_error("corkscrew_interior: no candidate qualifies; r too large for M0");
    best.achieved_m0 = r / best.dist_boundary;
    return best;
}

CorkscrewResult corkscrew_exterior(const SpherePoint& w, double r, const Calibration& cal,
                                   const QuadSpec& quad) {
    if (!(r > 0.0 && r < cal.r0))
        throw std::invalid_argument("corkscrew_exterior: r outside (0, r0)");
    const Point pw = embed(w);
    const double ca = std::cos(w.alpha);

    // solve d(make(u), w) = target by bisection in u (distance grows with u)
    auto tune = [&](auto&& make, double target, double hi0) {
        double lo = 0.0, hi = hi0;
        for (int it = 0; it < 24 && dist(make(hi), pw) < target; ++it) hi *= 2.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (dist(make(mid), pw) > target) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return make(0.5 * (lo + hi));
    };

    CorkscrewResult best;
    bool found = false;
    auto consider = [&](const Point& p) {
        if (!(koranyi_norm(p) > 1.0)) return;  // must be exterior
        CorkscrewResult cand = verify_candidate(p, pw, quad);
        if (cand.dist_omega <= r && cand.dist_boundary >= r / cal.m0 &&
            cand.dist_boundary <= cand.dist_omega + 1e-12) {
            if (!found || cand.dist_boundary > best.dist_boundary) {
                best = cand;
                found = true;
            }
        }
    };

    const double sign_t = w.alpha >= 0.0 ? 1.0 : -1.0;
    for (double theta : {0.95, 0.8, 0.6, 0.4}) {
        const double target = theta * r;
        // outward radial extension gamma(1+u, w)
        consider(tune([&](double u) { return radial_point(1.0 + u, w); }, target,
                      std::max(target * std::sqrt(ca), 1e-12)));
        // dilated ray delta_{1+u}(w)
        consider(tune([&](double u) { return dilate(1.0 + u, pw); }, target, target));
        // vertical offset w . (0,0,+-v), outward in t
        consider(tune([&](double v) { return group_mul(pw, Point{0.0, 0.0, sign_t * v}); },
                      target, target * target));
    }
    if (!found)
        throw std::runtime_error("corkscrew_exterior: no candidate qualifies; r too large for M0");
    best.achieved_m0 = r / best.dist_boundary;
    return best;
}

CanonicalMap canonical_T(const Point& x, const Calibration& cal, const QuadSpec& quad) {
    if (!(koranyi_norm(x) > cal.big_r_star))
        throw std::invalid_argument("canonical_T: ||x|| must exceed R*");
    const BoundaryDistanceResult near = dist_to_boundary(x, quad);
    CanonicalMap cm;
    cm.rho = near.value;
    cm.omega = near.argmin;
    cm.anchor = corkscrew_exterior(cm.omega, cal.m0 * cal.n_sep * cm.rho, cal, quad);
    cm.params = MobiusParams{x, cm.anchor.point, cm.rho};
    return cm;
}

ScanReport conjugation_transfer_check(const PointMap& f, const MobiusParams& params,
                                      const SpherePoint& w, double r, const QuadSpec& quad) {
    const Mobius T(params);
    const PointMap g = [&](const Point& q) { return f(T.inverse(q)); };
    const Point pw = embed(w);

    ScanReport rep;
    rep.experiment = "conjugation-transfer";
    rep.param("rho", params.rho);
    rep.param("r", r);
    rep.columns = {"x", "y", "t", "value", "ratio"};
    SplitMix64 rng = cell_rng(quad.seed, 0x636f6e6a);
    const int wanted = std::max<int>(32, static_cast<int>(quad.mc_samples / 2000));
    double lo = 1e300, hi = 0.0;
    int got = 0;
    for (int tries = 0; tries < 200000 && got < wanted; ++tries) {
        // rejection sample from the Koranyi box around w
        const Point u{rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r * r, r * r)};
        if (koranyi_norm4(u) >= std::pow(r, 4)) continue;
        const Point q = group_mul(pw, u);
        if (koranyi_norm(q) >= 1.0 - 1e-6) continue;
        const double dhf = horiz_derivative(f, q).operator_norm();
        const double dhg = horiz_derivative(g, T(q)).operator_norm();
        const double jt = T.jacobian(q);
        if (dhg <= 0.0 || !(jt > 0.0)) continue;
        const double ratio = dhf / (dhg * fourth_root(jt));
        rep.rows.push_back({q.x, q.y, q.t, dhf, ratio});
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        ++got;
    }
    rep.stat("ratio_min", lo);
    rep.stat("ratio_max", hi);
    rep.stat("samples", got);
    rep.pass = got > 0 && std::isfinite(lo) && std::isfinite(hi);
    return rep;
}

}  // namespace heis
