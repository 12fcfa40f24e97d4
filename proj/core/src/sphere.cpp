#include "heis/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heis {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}  // namespace

Point embed(const SpherePoint& w) {
    const double c = std::cos(w.alpha);
    const double rz = std::sqrt(std::max(c, 0.0));
    return {rz * std::cos(w.phi), rz * std::sin(w.phi), std::sin(w.alpha)};
}

SpherePoint project(const Point& p) {
    if (std::abs(koranyi_norm(p) - 1.0) >= 1e-9)
        throw std::invalid_argument("project: point is not on the unit sphere");
    if (planar_norm_sq(p) <= 0.0)
        throw std::invalid_argument("project: characteristic point has no chart coordinates");
    SpherePoint w;
    w.alpha = std::asin(std::clamp(p.t, -1.0, 1.0));
    w.phi = std::atan2(p.y, p.x);
    if (w.phi < 0.0) w.phi += 2.0 * kPi;
    return w;
}

double density(MeasureKind kind, double alpha) {
    if (!(alpha > -kHalfPi && alpha < kHalfPi))
        throw std::invalid_argument("density: alpha outside (-pi/2, pi/2)");
    switch (kind) {
        case MeasureKind::Sigma0:
            return 1.0;
        case MeasureKind::Sigma: {
            const double c = std::cos(alpha);
            return c * c;
        }
        case MeasureKind::S3:
            return std::sqrt(std::cos(alpha));
    }
    return 0.0;
}

double integrate_sphere(const BoundaryFn& g, MeasureKind kind, const QuadSpec& quad) {
    quad.validate();
    const QuadNodes na = midpoint_rule(quad.n_alpha, -kHalfPi, kHalfPi);
    const QuadNodes np = midpoint_rule(quad.n_phi, 0.0, 2.0 * kPi);
    double total = 0.0;
    for (int i = 0; i < quad.n_alpha; ++i) {
        const double wa = na.w[i] * density(kind, na.x[i]);
        double row = 0.0;
        for (int j = 0; j < quad.n_phi; ++j) {
            const double v = g(SpherePoint{na.x[i], np.x[j]});
            if (!std::isfinite(v)) throw std::runtime_error("integrate_sphere: non-finite integrand");
            row += np.w[j] * v;
        }
        total += wa * row;
    }
    return total;
}

double integrate_sphere_graded(const BoundaryFn& g, MeasureKind kind, const SpherePoint& focus,
                               int levels, int per_panel) {
    const QuadNodes na = graded_toward(focus.alpha, -kHalfPi, kHalfPi, levels, per_panel);
    const QuadNodes np = graded_toward(focus.phi, focus.phi - kPi, focus.phi + kPi, levels, per_panel);
    double total = 0.0;
    for (std::size_t i = 0; i < na.x.size(); ++i) {
        const double wa = na.w[i] * density(kind, na.x[i]);
        double row = 0.0;
        for (std::size_t j = 0; j < np.x.size(); ++j) {
            const double v = g(SpherePoint{na.x[i], np.x[j]});
            if (!std::isfinite(v))
                throw std::runtime_error("integrate_sphere_graded: non-finite integrand");
            row += np.w[j] * v;
        }
        total += wa * row;
    }
    return total;
}

namespace {

struct ChartWindow {
    double alo, ahi;   // clamped to (-pi/2, pi/2) implicitly by integration
    double dphi;       // half width; pi means the full circle
};

// Grow a chart rectangle around `w` until the metric ball boundary test
// passes on the window border (or the window saturates the chart).
ChartWindow enclosing_window(const SpherePoint& w, double r) {
    const Point p = embed(w);
    const double r4 = r * r * r * r;
    double da = std::min(r + r * r, kPi);
    double dp = std::min(3.0 * r, kPi);
    auto inside_ball = [&](double a, double f) {
        const double ac = std::clamp(a, -kHalfPi, kHalfPi);
        return dist4(embed(SpherePoint{ac, f}), p) < r4;
    };
    for (int grow = 0; grow < 60; ++grow) {
        bool ok = true;
        const double alo = std::max(w.alpha - da, -kHalfPi);
        const double ahi = std::min(w.alpha + da, kHalfPi);
        const bool full_phi = dp >= kPi;
        // border samples: alpha edges (if interior) and phi edges (if not full)
        const int m = 65;
        if (ahi < kHalfPi)
            for (int j = 0; j <= m && ok; ++j)
                if (inside_ball(ahi, w.phi - dp + 2.0 * dp * j / m)) ok = false;
        if (alo > -kHalfPi)
            for (int j = 0; j <= m && ok; ++j)
                if (inside_ball(alo, w.phi - dp + 2.0 * dp * j / m)) ok = false;
        if (!full_phi)
            for (int j = 0; j <= m && ok; ++j) {
                const double a = alo + (ahi - alo) * j / m;
                if (inside_ball(a, w.phi - dp) || inside_ball(a, w.phi + dp)) ok = false;
            }
        if (ok) return {alo, ahi, full_phi ? kPi : dp};
        da = std::min(2.0 * da, kPi);
        dp = std::min(2.0 * dp, kPi);
    }
    return {-kHalfPi, kHalfPi, kPi};
}

double window_integral(const BoundaryFn& g, const SpherePoint& center, double r,
                       MeasureKind kind, const QuadSpec& quad, bool indicator_only) {
    const ChartWindow win = enclosing_window(center, r);
    const Point p = embed(center);
    const double r4 = r * r * r * r;
    const QuadNodes na = midpoint_rule(quad.n_alpha, win.alo, win.ahi);
    const QuadNodes np = midpoint_rule(quad.n_phi, center.phi - win.dphi, center.phi + win.dphi);
    double total = 0.0;
    for (int i = 0; i < quad.n_alpha; ++i) {
        const double wa = na.w[i] * density(kind, na.x[i]);
        double row = 0.0;
        for (int j = 0; j < quad.n_phi; ++j) {
            const SpherePoint wp{na.x[i], np.x[j]};
            if (dist4(embed(wp), p) >= r4) continue;
            row += np.w[j] * (indicator_only ? 1.0 : g(wp));
        }
        total += wa * row;
    }
    return total;
}

}  // namespace

double sphere_ball_measure(const SpherePoint& w, double r, MeasureKind kind,
                           const QuadSpec& quad) {
    quad.validate();
    if (!(r > 0.0)) throw std::invalid_argument("sphere_ball_measure: r must be positive");
    if (r >= kSphereDiameter) {
        // whole sphere; integrate the density exactly on the full chart
        return integrate_sphere([](const SpherePoint&) { return 1.0; }, kind, quad);
    }
    return window_integral({}, w, r, kind, quad, /*indicator_only=*/true);
}

double sphere_ball_average(const BoundaryFn& g, const SpherePoint& center, double r,
                           const QuadSpec& quad) {
    const double mass = window_integral(g, center, r, MeasureKind::S3, quad, false);
    const double vol = window_integral({}, center, r, MeasureKind::S3, quad, true);
    if (!(vol > 0.0)) throw std::runtime_error("sphere_ball_average: empty ball at this resolution");
    return mass / vol;
}

double hl_maximal(const BoundaryFn& g, const SpherePoint& w, const QuadSpec& quad) {
    quad.validate();
    const Point pw = embed(w);
    double best = 0.0;
    for (int k = 0; k <= 9; ++k) {
        const double r = std::ldexp(1.0, -k);  // dyadic radii 1, 1/2, ..., 2^-9
        // candidate centers: w itself plus chart offsets that keep w inside
        const SpherePoint centers[5] = {
            w,
            {std::clamp(w.alpha + 0.25 * r, -kHalfPi + 1e-12, kHalfPi - 1e-12), w.phi},
            {std::clamp(w.alpha - 0.25 * r, -kHalfPi + 1e-12, kHalfPi - 1e-12), w.phi},
            {w.alpha, w.phi + 0.25 * r},
            {w.alpha, w.phi - 0.25 * r},
        };
        for (const SpherePoint& c : centers) {
            if (dist4(embed(c), pw) >= std::pow(r, 4)) continue;  // ball must contain w
            best = std::max(best, sphere_ball_average(g, c, r, quad));
        }
    }
    return best;
}

}  // namespace heis
