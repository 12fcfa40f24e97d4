#include "heis/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "heis/parallel.hpp"

namespace heis {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}  // namespace

Point radial_point(double s, const SpherePoint& w) {
    if (!(s > 0.0)) throw std::invalid_argument("radial_point: s must be positive");
    const double c = std::cos(w.alpha);
    const double rz = std::sqrt(std::max(c, 0.0));
    const double phase = w.phi - std::tan(w.alpha) * std::log(s);
    return {s * rz * std::cos(phase), s * rz * std::sin(phase), s * s * std::sin(w.alpha)};
}

double radial_speed(const SpherePoint& w) {
    return 1.0 / std::sqrt(std::cos(w.alpha));
}

RadialCoords project_radial(const Point& q) {
    const double s = koranyi_norm(q);
    if (!(s > 0.0)) throw std::invalid_argument("project_radial: q = 0");
    if (planar_norm_sq(q) <= 0.0)
        throw std::invalid_argument("project_radial: q on the vertical axis");
    RadialCoords rc;
    rc.s = s;
    const double sa = std::clamp(q.t / (s * s), -1.0, 1.0);
    rc.omega.alpha = std::asin(sa);
    double phi = std::atan2(q.y, q.x) + std::tan(rc.omega.alpha) * std::log(s);
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0.0) phi += 2.0 * kPi;
    rc.omega.phi = phi;
    return rc;
}

double closed_form_dist4(double s, double alpha, double alpha_t, double phi) {
    if (!(s > 0.0)) throw std::invalid_argument("closed_form_dist4: s must be positive");
    const double ca = std::cos(alpha), ct = std::cos(alpha_t);
    const double ra = std::sqrt(std::max(ca, 0.0)), rt = std::sqrt(std::max(ct, 0.0));
    const double a1 = rt * std::cos(phi) - s * ra;
    const double planar = a1 * a1 + ct * std::sin(phi) * std::sin(phi);
    const double vert =
        std::sin(alpha_t) - s * s * std::sin(alpha) + 2.0 * s * ra * rt * std::sin(phi);
    return planar * planar + vert * vert;
}

double closed_form_dist(double s, double alpha, double alpha_t, double phi) {
    return fourth_root(closed_form_dist4(s, alpha, alpha_t, phi));
}

double closed_form_dist_expanded(double s, double alpha, double alpha_t, double phi) {
    if (!(s > 0.0)) throw std::invalid_argument("closed_form_dist_expanded: s must be positive");
    const double ca = std::cos(alpha), ct = std::cos(alpha_t);
    const double q = 1.0 + s * s * s * s +
                     s * s * (6.0 * ca * ct - 2.0 * std::sin(alpha) * std::sin(alpha_t)) -
                     4.0 * s * std::sqrt(std::max(ca * ct, 0.0)) *
                         (std::cos(alpha_t + phi) + s * s * std::cos(alpha - phi));
    if (q < -1e-12)
        throw std::domain_error("closed_form_dist_expanded: negative radicand, formula misuse");
    return fourth_root(std::max(q, 0.0));
}

namespace {

// Rescale to the unit gauge sphere; dilations act exactly on the gauge.
Point gauge_project(const Point& p) {
    const double n = koranyi_norm(p);
    return {p.x / n, p.y / n, p.t / (n * n)};
}

struct SphereMinState {
    double f = 0.0;  // dist^4
    Point w;
    int evals = 0;
};

// Tangent-plane Newton for w |-> d(q, w)^4 on the gauge sphere.  The chart
// (alpha, phi) degenerates into a narrow diagonal valley near the minimizer,
// so the refinement runs in ambient coordinates: steps are taken in the
// Euclidean tangent plane of the surface and projected back by a gauge
// dilation.
void refine_on_sphere(const Point& q, SphereMinState& st, int max_iter) {
    double h = 0.05;
    for (int it = 0; it < max_iter; ++it) {
        const Point w = st.w;
        const double z2 = planar_norm_sq(w);
        double nx = 4.0 * z2 * w.x, ny = 4.0 * z2 * w.y, nt = 2.0 * w.t;
        const double nn = std::sqrt(nx * nx + ny * ny + nt * nt);
        nx /= nn;
        ny /= nn;
        nt /= nn;
        Point e1 = std::abs(nx) < 0.9 ? Point{1.0, 0.0, 0.0} : Point{0.0, 1.0, 0.0};
        const double d1 = e1.x * nx + e1.y * ny + e1.t * nt;
        e1 = {e1.x - d1 * nx, e1.y - d1 * ny, e1.t - d1 * nt};
        const double n1 = std::sqrt(e1.x * e1.x + e1.y * e1.y + e1.t * e1.t);
        e1 = {e1.x / n1, e1.y / n1, e1.t / n1};
        const Point e2 = {ny * e1.t - nt * e1.y, nt * e1.x - nx * e1.t, nx * e1.y - ny * e1.x};

        auto at = [&](double a, double b) {
            return gauge_project(
                {w.x + a * e1.x + b * e2.x, w.y + a * e1.y + b * e2.y, w.t + a * e1.t + b * e2.t});
        };
        auto F = [&](double a, double b) {
            ++st.evals;
            return dist4(q, at(a, b));
        };

        const double f0 = st.f;
        const double fpa = F(h, 0.0), fma = F(-h, 0.0);
        const double fpb = F(0.0, h), fmb = F(0.0, -h);
        const double fab = F(h, h);
        const double ga = (fpa - fma) / (2.0 * h), gb = (fpb - fmb) / (2.0 * h);
        const double haa = (fpa - 2.0 * f0 + fma) / (h * h);
        const double hbb = (fpb - 2.0 * f0 + fmb) / (h * h);
        const double hab = (fab - fpa - fpb + f0) / (h * h);
        const double det = haa * hbb - hab * hab;

        double da, db;
        if (det > 0.0 && haa > 0.0) {
            da = -(hbb * ga - hab * gb) / det;
            db = -(-hab * ga + haa * gb) / det;
        } else {
            da = -ga * h;
            db = -gb * h;
        }
        const double sl = std::hypot(da, db);
        if (sl > 10.0 * h) {
            da *= 10.0 * h / sl;
            db *= 10.0 * h / sl;
        }
        double fnew = F(da, db);
        int backtracks = 0;
        while (fnew > f0 && backtracks < 14) {
            da *= 0.5;
            db *= 0.5;
            fnew = F(da, db);
            ++backtracks;
        }
        if (fnew <= f0) {
            st.w = at(da, db);
            const double gain = f0 - fnew;
            st.f = fnew;
            h = std::clamp(2.0 * std::hypot(da, db), 1e-10, 0.05);
            if (gain <= 1e-12 * std::max(f0, 1e-30) && backtracks == 0 && it > 2) break;
        } else {
            h *= 0.25;
            if (h < 1e-11) break;
        }
    }
}

BoundaryDistanceResult solve_sphere_distance(const Point& q, const QuadSpec& quad,
                                             const Point* hint) {
    std::array<SphereMinState, 7> starts;
    int n_starts = 0;
    auto add_start = [&](const Point& w) {
        if (n_starts < static_cast<int>(starts.size()))
            starts[n_starts++] = SphereMinState{dist4(q, w), w, 1};
    };

    if (hint) add_start(gauge_project(*hint));
    // smart seeds: chart projection of q, gauge projection, both poles
    if (planar_norm_sq(q) > 0.0) {
        const RadialCoords rc = project_radial(q);
        add_start(embed(rc.omega));
        add_start(gauge_project(q));
    }
    add_start(Point{0.0, 0.0, 1.0});
    add_start(Point{0.0, 0.0, -1.0});

    if (!hint) {
        // coarse chart grid, best two cells
        const int na = std::clamp(quad.n_alpha / 4, 16, 48);
        const int np = std::clamp(quad.n_phi / 2, 24, 96);
        SphereMinState best1{1e300, {}, 0}, best2{1e300, {}, 0};
        for (int i = 0; i <= na; ++i) {
            const double a = -kHalfPi + kPi * i / na;
            for (int j = 0; j < np; ++j) {
                const double f = (j + 0.5) * 2.0 * kPi / np;
                const Point w = embed(SpherePoint{a, f});
                const double v = dist4(q, w);
                if (v < best1.f) {
                    best2 = best1;
                    best1 = {v, w, 0};
                } else if (v < best2.f) {
                    best2 = {v, w, 0};
                }
            }
        }
        add_start(best1.w);
        add_start(best2.w);
    }

    SphereMinState winner{1e300, {}, 0};
    int total_evals = 0;
    for (int i = 0; i < n_starts; ++i) {
        refine_on_sphere(q, starts[i], hint ? 40 : 60);
        total_evals += starts[i].evals;
        if (starts[i].f < winner.f) winner = starts[i];
    }

    BoundaryDistanceResult out;
    out.value = fourth_root(winner.f);
    out.argmin_point = winner.w;
    out.iterations = total_evals;
    if (planar_norm_sq(winner.w) > 0.0) {
        out.argmin.alpha = std::asin(std::clamp(winner.w.t, -1.0, 1.0));
        out.argmin.phi = std::atan2(winner.w.y, winner.w.x);
        if (out.argmin.phi < 0.0) out.argmin.phi += 2.0 * kPi;
    } else {
        out.argmin.alpha = winner.w.t > 0.0 ? kHalfPi : -kHalfPi;
        out.argmin.phi = 0.0;
    }
    return out;
}

}  // namespace

BoundaryDistanceResult dist_to_sphere(const Point& q, const QuadSpec& quad, const Point* hint) {
    return solve_sphere_distance(q, quad, hint);
}

BoundaryDistanceResult dist_to_boundary(const Point& q, const QuadSpec& quad) {
    if (!(koranyi_norm(q) < 1.0))
        throw std::invalid_argument("dist_to_boundary: point must lie inside the unit ball");
    return solve_sphere_distance(q, quad, nullptr);
}

double hitting_param(const SpherePoint& w, double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("hitting_param: rho outside (0,1)");
    const double ca = std::cos(w.alpha);
    const double ta = std::tan(w.alpha);
    auto excess = [&](double s) {
        return closed_form_dist(s, w.alpha, w.alpha, ta * std::log(s)) - rho;
    };
    // d(gamma(s,w),w) >= 1-s forces excess >= 0 at s = 1-rho; the length bound
    // d <= (1-s)/sqrt(cos a) makes it strictly negative above 1 - rho sqrt(ca).
    const double lo = 1.0 - rho;
    const double hi = std::min(1.0 - 0.5 * rho * std::sqrt(ca), 1.0 - 1e-16);
    double a = hi, fa = excess(hi);
    if (fa >= 0.0) throw std::runtime_error("hitting_param: bracket assumption violated");
    // walk down; the step resolves the spiral oscillation scale pi s / |tan a|
    const double osc = 0.25 * kPi * lo / std::max(std::abs(ta), 1.0);
    const double step = std::max(std::min((hi - lo) / 64.0, osc), (hi - lo) / 65536.0);
    double b = lo, fb = excess(lo);
    for (double s = hi - step; s > lo; s -= step) {
        const double fs = excess(s);
        if (fs >= 0.0) {
            b = s;
            fb = fs;
            break;
        }
        a = s;
        fa = fs;
    }
    if (fa >= 0.0 || fb < 0.0) throw std::runtime_error("hitting_param: root not bracketed");
    for (int it = 0; it < 200 && std::abs(a - b) > 1e-16; ++it) {
        const double mid = 0.5 * (a + b);
        if (excess(mid) >= 0.0) {
            b = mid;
        } else {
            a = mid;
        }
    }
    return 0.5 * (a + b);
}

double nt_ratio(double s, const SpherePoint& w, const QuadSpec& quad) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("nt_ratio: s outside (0,1)");
    const Point g = radial_point(s, w);
    const double num = closed_form_dist(s, w.alpha, w.alpha, std::tan(w.alpha) * std::log(s));
    const double den = dist_to_sphere(g, quad).value;
    return num / den;
}

ScanReport kappa_scan(const QuadSpec& grid) {
    grid.validate();
    // alpha rows: 0 plus +-(pi/2 - u), u log-spaced in [1e-3, pi/2]
    const int half = std::max(grid.n_alpha / 2, 4);
    std::vector<double> alphas;
    alphas.push_back(0.0);
    for (int i = 0; i < half; ++i) {
        const double u = std::exp(std::log(1e-3) +
                                  (std::log(kHalfPi) - std::log(1e-3)) * i / (half - 1.0));
        alphas.push_back(kHalfPi - u);
        alphas.push_back(-(kHalfPi - u));
    }
    // s columns: 1 - v, v log-spaced in [1e-6, 1 - 1e-4]
    const int ns = std::max(grid.n_s, 4);
    std::vector<double> svals(ns);
    for (int k = 0; k < ns; ++k) {
        const double v = std::exp(std::log(1e-6) +
                                  (std::log(1.0 - 1e-4) - std::log(1e-6)) * k / (ns - 1.0));
        svals[k] = 1.0 - v;
    }

    std::vector<std::vector<std::array<double, 5>>> cells(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t i) {
        const double alpha = alphas[i];
        const SpherePoint w{alpha, 0.0};
        const double ta = std::tan(alpha);
        Point hint = embed(w);
        auto& row = cells[i];
        row.reserve(svals.size());
        for (double s : svals) {  // s descends from ~1, warm start follows
            const Point g = radial_point(s, w);
            const double num = closed_form_dist(s, alpha, alpha, ta * std::log(s));
            const BoundaryDistanceResult res = dist_to_sphere(g, grid, &hint);
            hint = res.argmin_point;
            row.push_back({alpha, s, num, res.value, num / res.value});
        }
    });

    ScanReport rep;
    rep.experiment = "kappa-scan";
    rep.param("n_alpha_rows", static_cast<double>(alphas.size()));
    rep.param("n_s", static_cast<double>(ns));
    rep.columns = {"alpha", "s", "d_omega", "d_boundary", "ratio"};
    double best = 0.0, best_alpha = 0.0, best_s = 0.0;
    for (const auto& row : cells)
        for (const auto& c : row) {
            rep.rows.push_back({c[0], c[1], c[2], c[3], c[4]});
            if (c[4] > best) {
                best = c[4];
                best_alpha = c[0];
                best_s = c[1];
            }
        }
    rep.stat("kappa_hat", best - 1.0);
    rep.stat("argmax_alpha", best_alpha);
    rep.stat("argmax_s", best_s);
    rep.pass = std::isfinite(best);
    return rep;
}

double polar_integrate(const std::function<double(const Point&)>& u, double a, double b,
                       const QuadSpec& quad) {
    quad.validate();
    if (!(a >= 0.0 && b > a)) throw std::invalid_argument("polar_integrate: bad s-range");
    const QuadNodes ns = gauss_legendre(quad.n_s, a, b);
    const QuadNodes na = midpoint_rule(quad.n_alpha, -kHalfPi, kHalfPi);
    const QuadNodes np = midpoint_rule(quad.n_phi, 0.0, 2.0 * kPi);
    double total = 0.0;
    for (int i = 0; i < quad.n_alpha; ++i) {
        for (int j = 0; j < quad.n_phi; ++j) {
            const SpherePoint w{na.x[i], np.x[j]};
            const double wij = na.w[i] * np.w[j];
            double inner = 0.0;
            for (int k = 0; k < quad.n_s; ++k) {
                const double s = ns.x[k];
                const double v = u(radial_point(s, w));
                if (!std::isfinite(v))
                    throw std::runtime_error("polar_integrate: non-finite integrand");
                inner += ns.w[k] * s * s * s * v;
            }
            total += wij * inner;
        }
    }
    return total;
}

double level_set_radius(double r, double t, const QuadSpec& quad) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("level_set_radius: r outside (0,1)");
    const double slab = 1.0 - (1.0 - r) * (1.0 - r);
    if (std::abs(t) > slab + 1e-12)
        throw std::invalid_argument("level_set_radius: t outside the admissible slab");
    const double target = 1.0 - r;
    const double rho_max = fourth_root(std::max(1.0 - t * t, 0.0));
    Point hint{0.0, 0.0, t >= 0.0 ? 1.0 : -1.0};
    auto delta = [&](double rho) {
        const BoundaryDistanceResult res = dist_to_sphere(Point{rho, 0.0, t}, quad, &hint);
        hint = res.argmin_point;
        return res.value - target;
    };
    double lo = 0.0;
    if (delta(0.0) <= 1e-13) return 0.0;  // slab edge
    double hi = rho_max;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (delta(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double big_M(double r, const std::function<Point(const Point&)>& f, const QuadSpec& quad) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("big_M: r outside (0,1)");
    const double slab = 1.0 - (1.0 - r) * (1.0 - r);
    const int nt = std::max(2, quad.n_s / 2);
    const int nphi = std::clamp(quad.n_phi / 4, 8, 64);
    double best = 0.0;
    for (int i = 0; i <= nt; ++i) {
        const double t = std::clamp(-slab + 2.0 * slab * i / nt, -slab, slab);
        const double rho = level_set_radius(r, t, quad);
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * kPi * j / nphi;
            const Point q{rho * std::cos(phi), rho * std::sin(phi), t};
            best = std::max(best, koranyi_norm(f(q)));
            if (rho == 0.0) break;  // axis point, rotation-invariant
        }
    }
    return best;
}

}  // namespace heis
