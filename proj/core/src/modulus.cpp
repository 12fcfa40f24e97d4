#include "heis/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heis/radial.hpp"

namespace heis {

DensityField ring_extremal_density(double a, double b) {
    if (!(0.0 < a && a < b)) throw std::invalid_argument("ring_extremal_density: need 0 < a < b");
    const double coef = 1.0 / std::log(b / a);
    DensityField rho;
    rho.support = "annulus";
    rho.s_lo = a;
    rho.s_hi = b;
    rho.eval = [a, b, coef](const Point& q) {
        const double n = koranyi_norm(q);
        if (n < a || n > b) return 0.0;
        return coef * planar_norm(q) / (n * n);
    };
    return rho;
}

DensityField radial_cone_density(const BoundarySet& E, double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("radial_cone_density: r outside (0,1)");
    const double coef = 1.0 / std::log(1.0 / r);
    DensityField rho;
    rho.support = "radial cone";
    rho.s_lo = r;
    rho.s_hi = 1.0;
    rho.eval = [E, r, coef](const Point& q) {
        const double n = koranyi_norm(q);
        if (n < r || n > 1.0 || planar_norm_sq(q) <= 0.0) return 0.0;
        if (!E(project_radial(q).omega)) return 0.0;
        return coef * planar_norm(q) / (n * n);
    };
    return rho;
}

DiscretizedCurve make_radial_curve(const SpherePoint& w, double a, double b, int n) {
    if (!(0.0 < a && a < b) || n < 2) throw std::invalid_argument("make_radial_curve: bad range");
    DiscretizedCurve c;
    c.name = "radial";
    c.params.resize(n + 1);
    c.points.resize(n + 1);
    c.speeds.assign(n + 1, radial_speed(w));
    for (int i = 0; i <= n; ++i) {
        const double s = a + (b - a) * i / n;
        c.params[i] = s;
        c.points[i] = radial_point(s, w);
    }
    return c;
}

DiscretizedCurve make_chord(const Point& p, const Point& q, int n) {
    if (n < 2) throw std::invalid_argument("make_chord: need n >= 2");
    DiscretizedCurve c;
    c.name = "chord";
    c.params.resize(n + 1);
    c.points.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double u = static_cast<double>(i) / n;
        c.params[i] = u;
        c.points[i] = {p.x + u * (q.x - p.x), p.y + u * (q.y - p.y), p.t + u * (q.t - p.t)};
    }
    return c;
}

double line_integral(const DensityField& rho, const DiscretizedCurve& curve) {
    const std::size_t n = curve.points.size();
    if (n < 2 || curve.params.size() != n)
        throw std::invalid_argument("line_integral: malformed curve");
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        vals[i] = rho.eval(curve.points[i]);
        if (!std::isfinite(vals[i]))
            throw std::runtime_error("line_integral: density not finite on the curve");
    }
    double total = 0.0;
    if (!curve.speeds.empty()) {
        // trapezoid of rho * |gamma'| in the parameter
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double ds = curve.params[i + 1] - curve.params[i];
            total += 0.5 * (vals[i] * curve.speeds[i] + vals[i + 1] * curve.speeds[i + 1]) * ds;
        }
    } else {
        // metric polyline: chord Koranyi lengths
        for (std::size_t i = 0; i + 1 < n; ++i)
            total += 0.5 * (vals[i] + vals[i + 1]) * dist(curve.points[i + 1], curve.points[i]);
    }
    return total;
}

ScanReport admissibility_check(const DensityField& rho,
                               const std::vector<DiscretizedCurve>& curves) {
    ScanReport rep;
    rep.experiment = "admissibility";
    rep.param("support", rho.support);
    rep.columns = {"curve", "samples", "r", "value", "ratio"};
    double worst = 1e300;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const double v = line_integral(rho, curves[i]);
        worst = std::min(worst, v);
        rep.rows.push_back({static_cast<double>(i), static_cast<double>(curves[i].points.size()),
                            0.0, v, v});
    }
    rep.stat("min_line_integral", worst);
    rep.tolerance = 1e-6;
    rep.pass = worst >= 1.0 - rep.tolerance;
    return rep;
}

double energy(const DensityField& rho, const QuadSpec& quad) {
    quad.validate();
    auto rho4 = [&rho](const Point& q) {
        const double v = rho.eval(q);
        const double v2 = v * v;
        return v2 * v2;
    };
    const double lo = std::max(rho.s_lo, 0.0);
    const double hi = rho.s_hi;
    const double coarse = polar_integrate(rho4, lo, hi, quad);
    QuadSpec fine = quad;
    fine.n_s *= 2;
    const double refined = polar_integrate(rho4, lo, hi, fine);
    const double tol = std::max(10.0 * quad.rel_tol, 1e-9);
    if (std::abs(refined - coarse) > tol * std::max(std::abs(refined), 1.0))
        throw std::runtime_error("energy: s-quadrature tail test failed (divergent density?)");
    return refined;
}

double radial_family_modulus(const BoundarySet& E, double r, const QuadSpec& quad) {
    const double value = energy(radial_cone_density(E, r), quad);
    if (!(value > 0.0)) throw std::runtime_error("radial_family_modulus: sigma(E) vanishes");
    return value;
}

}  // namespace heis
