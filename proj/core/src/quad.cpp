#include "heis/quad.hpp"

#include <cmath>
#include <numbers>

namespace heis {

QuadNodes gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadNodes out;
    out.x.resize(n);
    out.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (xi * p0 - p1) / (xi * xi - 1.0);
            const double dx = p0 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
        const double wi = 2.0 * xl / ((1.0 - xi * xi) * pp * pp);
        out.x[i] = xm - xl * xi;
        out.w[i] = wi;
        out.x[n - 1 - i] = xm + xl * xi;
        out.w[n - 1 - i] = wi;
    }
    return out;
}

QuadNodes midpoint_rule(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("midpoint_rule: n must be >= 1");
    QuadNodes out;
    out.x.resize(n);
    out.w.resize(n);
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
        out.x[i] = a + (i + 0.5) * h;
        out.w[i] = h;
    }
    return out;
}

namespace {

// Panels on [lo,hi] with dyadic grading toward lo.
void graded_panels(QuadNodes& out, double lo, double hi, int levels, int per_panel) {
    if (hi <= lo) return;
    const double len = hi - lo;
    double right = hi;
    for (int k = 0; k < levels; ++k) {
        const double left = (k + 1 == levels) ? lo : lo + len * std::ldexp(1.0, -(k + 1));
        const QuadNodes panel = gauss_legendre(per_panel, left, right);
        out.x.insert(out.x.end(), panel.x.begin(), panel.x.end());
        out.w.insert(out.w.end(), panel.w.begin(), panel.w.end());
        right = left;
        if (right <= lo) break;
    }
}

}  // namespace

QuadNodes graded_toward(double target, double a, double b, int levels, int per_panel) {
    QuadNodes out;
    const double c = std::fmin(std::fmax(target, a), b);
    graded_panels(out, c, b, levels, per_panel);
    // mirror for [a,c]: grade toward c from the left
    QuadNodes left;
    graded_panels(left, 0.0, c - a, levels, per_panel);
    for (std::size_t i = 0; i < left.x.size(); ++i) {
        out.x.push_back(c - left.x[i]);
        out.w.push_back(left.w[i]);
    }
    return out;
}

}  // namespace heis
