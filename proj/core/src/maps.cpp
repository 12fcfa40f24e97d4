#include "heis/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heis/mobius.hpp"
#include "heis/radial.hpp"

namespace heis {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}  // namespace

MapHandle identity_map() {
    MapHandle m;
    m.name = "identity";
    m.eval = [](const Point& q) { return q; };
    m.inverse = m.eval;
    m.beta = 1.0;
    m.claimed_conformal = true;
    return m;
}

MapHandle translation_map(const Point& c) {
    MapHandle m;
    m.name = "translate";
    m.eval = [c](const Point& q) { return group_mul(c, q); };
    const Point ci = group_inverse(c);
    m.inverse = [ci](const Point& q) { return group_mul(ci, q); };
    m.claimed_conformal = true;
    return m;
}

MapHandle dilation_map(double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("dilation_map: rho must be positive");
    MapHandle m;
    m.name = "dilate";
    m.eval = [rho](const Point& q) { return dilate(rho, q); };
    m.inverse = [rho](const Point& q) { return dilate(1.0 / rho, q); };
    m.claimed_conformal = true;
    return m;
}

MapHandle rotation_map(double theta) {
    MapHandle m;
    m.name = "rotate";
    m.eval = [theta](const Point& q) { return rotate(theta, q); };
    m.inverse = [theta](const Point& q) { return rotate(-theta, q); };
    m.claimed_conformal = true;
    return m;
}

MapHandle inversion_map() {
    MapHandle m;
    m.name = "inversion";
    m.eval = [](const Point& q) { return inversion(q); };
    m.inverse = m.eval;
    m.claimed_conformal = true;
    return m;
}

MapHandle inversion_shift_map(const Point& a) {
    if (!(koranyi_norm(a) > 1.0))
        throw std::invalid_argument("inversion_shift_map: a must lie outside the closed ball");
    MapHandle m;
    m.name = "invshift";
    const Point ai = group_inverse(a);
    m.eval = [ai](const Point& q) { return inversion(group_mul(ai, q)); };
    m.inverse = [a](const Point& q) { return group_mul(a, inversion(q)); };
    m.claimed_conformal = true;
    return m;
}

MapHandle compose(const MapHandle& f, const MapHandle& g, const std::string& name) {
    MapHandle m;
    m.name = name.empty() ? f.name + "*" + g.name : name;
    const PointMap fe = f.eval, ge = g.eval;
    m.eval = [fe, ge](const Point& q) { return fe(ge(q)); };
    if (f.inverse && g.inverse) {
        const PointMap fi = f.inverse, gi = g.inverse;
        m.inverse = [fi, gi](const Point& q) { return gi(fi(q)); };
    }
    m.claimed_conformal = f.claimed_conformal && g.claimed_conformal;
    return m;
}

MapHandle stretch(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("stretch: beta must be positive");
    MapHandle m;
    m.name = "stretch";
    m.beta = beta;
    m.claimed_conformal = beta == 1.0;
    m.eval = [beta](const Point& q) {
        const double n = koranyi_norm(q);
        if (n == 0.0) return Point{};
        return dilate(std::pow(n, beta - 1.0), q);
    };
    const double inv_beta = 1.0 / beta;
    m.inverse = [inv_beta](const Point& q) {
        const double n = koranyi_norm(q);
        if (n == 0.0) return Point{};
        return dilate(std::pow(n, inv_beta - 1.0), q);
    };
    return m;
}

MapHandle boundary_singular_map(const Point& a, double beta) {
    if (!(koranyi_norm(a) >= 1.0))
        throw std::invalid_argument("boundary_singular_map: a must lie outside the open ball");
    MapHandle m;
    m.name = "bsing";
    m.beta = beta;
    const MapHandle st = stretch(beta);
    const Point ai = group_inverse(a);
    const PointMap se = st.eval;
    m.eval = [ai, se](const Point& y) { return se(inversion(group_mul(ai, y))); };
    const PointMap si = st.inverse;
    m.inverse = [a, si](const Point& w) { return group_mul(a, inversion(si(w))); };
    return m;
}

namespace {

Point spec_point(const std::map<std::string, double>& p, const std::string& prefix,
                 const Point& fallback) {
    Point out = fallback;
    if (auto it = p.find(prefix + "x"); it != p.end()) out.x = it->second;
    if (auto it = p.find(prefix + "y"); it != p.end()) out.y = it->second;
    if (auto it = p.find(prefix + "t"); it != p.end()) out.t = it->second;
    return out;
}

double param_or(const std::map<std::string, double>& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

}  // namespace

MapHandle make_model_map(const std::string& name, const std::map<std::string, double>& params) {
    if (name == "identity") return identity_map();
    if (name == "translate") return translation_map(spec_point(params, "", Point{0.25, 0.1, 0.05}));
    if (name == "dilate") return dilation_map(param_or(params, "rho", 2.0));
    if (name == "rotate") return rotation_map(param_or(params, "theta", 0.7));
    if (name == "inversion") return inversion_map();
    if (name == "invshift") return inversion_shift_map(spec_point(params, "a", Point{2.0, 0.0, 0.0}));
    if (name == "stretch") return stretch(param_or(params, "beta", 1.5));
    if (name == "bsing") {
        // default pole: dilated boundary point at angular position (alpha0, phi0)
        const double alpha0 = param_or(params, "alpha0", 0.0);
        const double phi0 = param_or(params, "phi0", 0.0);
        const double off = param_or(params, "offset", 0.0);
        Point a = embed(SpherePoint{alpha0, phi0});
        if (off > 0.0) a = dilate(1.0 + off, a);
        return boundary_singular_map(a, param_or(params, "beta", 1.5));
    }
    if (name == "stretch_shift") {
        const MapHandle st = stretch(param_or(params, "beta", 1.5));
        const Point c = spec_point(params, "c", Point{0.0, 0.0, 0.5});
        MapHandle m = compose(translation_map(c), st, "stretch_shift");
        m.beta.reset();
        return m;
    }
    throw std::invalid_argument("make_model_map: unknown map name " + name);
}

std::vector<std::string> model_map_names() {
    return {"identity", "translate", "dilate",  "rotate",        "inversion",
            "invshift", "stretch",   "bsing",   "stretch_shift"};
}

DistortionEstimate distortion_estimate(const MapHandle& f, const Point& q,
                                       const std::vector<double>& radii) {
    if (radii.empty()) throw std::invalid_argument("distortion_estimate: no radii");
    DistortionEstimate out;
    const Point fq = f(q);
    // 64 directions on the unit gauge sphere, spread over both chart axes
    std::vector<Point> dirs;
    for (int i = 0; i < 8; ++i) {
        const double alpha = -kHalfPi + kPi * (i + 0.5) / 8.0;
        for (int j = 0; j < 8; ++j)
            dirs.push_back(embed(SpherePoint{alpha, 2.0 * kPi * j / 8.0}));
    }
    for (double r : radii) {
        double lo = 1e300, hi = 0.0;
        for (const Point& u : dirs) {
            const Point qp = group_mul(q, dilate(r, u));  // d(q, qp) = r exactly
            const double d = dist(fq, f(qp));
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        out.per_radius.emplace_back(r, hi / lo);
    }
    std::sort(out.per_radius.begin(), out.per_radius.end());
    out.value = out.per_radius.front().second;
    if (out.per_radius.size() >= 2) {
        const double v0 = out.per_radius[0].second, v1 = out.per_radius[1].second;
        out.stable = std::abs(v0 - v1) <= 0.05 * std::max(v0, v1);
    }
    return out;
}

RadialDerivativeCheck radial_derivative_bound(const MapHandle& f, const SpherePoint& w, double s,
                                              double h) {
    RadialDerivativeCheck out;
    const Point g = radial_point(s, w);
    const Point fg = f(g);
    const double nf = koranyi_norm(fg);
    if (nf == 0.0) throw std::domain_error("radial_derivative_bound: ||f|| vanishes on the curve");
    const double np = koranyi_norm(f(radial_point(s + h, w)));
    const double nm = koranyi_norm(f(radial_point(s - h, w)));
    out.lhs = std::abs(np - nm) / (2.0 * h);
    const double fI = planar_norm(fg);
    const double dh = horiz_derivative(f.eval, g).operator_norm();
    out.rhs = (fI / nf) * dh / std::sqrt(std::cos(w.alpha));
    out.slack = out.rhs - out.lhs;
    return out;
}

ScanReport radial_derivative_scan(const MapHandle& f, const QuadSpec& quad) {
    ScanReport rep;
    rep.experiment = "radial-derivative-bound";
    rep.param("map", f.name);
    rep.columns = {"alpha", "s", "lhs", "rhs", "ratio"};
    const int na = std::clamp(quad.n_alpha / 16, 5, 33);
    const int ns = std::clamp(quad.n_s / 8, 5, 17);
    double min_slack = 1e300;
    for (int i = 0; i < na; ++i) {
        const double alpha = -1.35 + 2.70 * i / (na - 1.0);
        for (int k = 0; k < ns; ++k) {
            const double s = 0.15 + 0.8 * k / (ns - 1.0);
            const RadialDerivativeCheck c = radial_derivative_bound(f, SpherePoint{alpha, 0.3}, s);
            rep.rows.push_back({alpha, s, c.lhs, c.rhs, c.lhs > 0.0 ? c.rhs / c.lhs : 1e300});
            min_slack = std::min(min_slack, c.slack);
        }
    }
    rep.stat("min_slack", min_slack);
    rep.tolerance = 1e-6;
    rep.pass = min_slack >= -rep.tolerance;
    return rep;
}

ScanReport growth_estimate_check(const MapHandle& f, const QuadSpec& quad) {
    const double f0 = koranyi_norm(f(Point{}));
    if (!(f0 > 0.0)) throw std::invalid_argument("growth_estimate_check: f must omit 0");
    ScanReport rep;
    rep.experiment = "growth-estimate";
    rep.param("map", f.name);
    rep.columns = {"delta", "sup_ratio", "log_delta", "log_sup", "ratio"};
    std::vector<double> lx, ly;
    for (int k = 2; k <= 7; ++k) {
        const double delta = std::ldexp(1.0, -k);
        const double m = big_M(1.0 - delta, f.eval, quad) / f0;
        rep.rows.push_back({delta, m, std::log(delta), std::log(m), m});
        lx.push_back(std::log(delta));
        ly.push_back(std::log(m));
    }
    // least squares slope / intercept
    const std::size_t n = lx.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    rep.stat("fitted_exponent", slope);
    rep.stat("fitted_constant", std::exp(intercept));
    rep.pass = std::isfinite(slope);
    return rep;
}

}  // namespace heis
