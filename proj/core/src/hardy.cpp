#include "heis/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heis/parallel.hpp"

namespace heis {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}  // namespace

double hardy_slice(const MapHandle& f, double p, double s, const QuadSpec& quad,
                   const std::optional<SpherePoint>& focus) {
    if (!(p > 0.0)) throw std::invalid_argument("hardy_slice: p must be positive");
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("hardy_slice: s outside (0,1]");
    const auto integrand = [&](const SpherePoint& w) {
        return std::pow(koranyi_norm(f(radial_point(s, w))), p);
    };
    if (focus) return integrate_sphere_graded(integrand, MeasureKind::S3, *focus);
    return integrate_sphere(integrand, MeasureKind::S3, quad);
}

std::vector<double> default_hardy_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 27; ++k) g.push_back(1.0 - std::ldexp(1.0, -k));
    return g;
}

HardyProfile hardy_norm(const MapHandle& f, double p, const std::vector<double>& s_grid,
                        const QuadSpec& quad, const std::optional<SpherePoint>& focus) {
    HardyProfile prof;
    prof.p = p;
    prof.s_grid = s_grid.empty() ? default_hardy_grid() : s_grid;
    prof.values.resize(prof.s_grid.size());
    parallel_for(prof.s_grid.size(), [&](std::size_t i) {
        prof.values[i] = hardy_slice(f, p, prof.s_grid[i], quad, focus);
    });
    prof.sup = *std::max_element(prof.values.begin(), prof.values.end());
    // slope of log I_s against log(1-s) over the last four samples, reported
    // only when the profile still grows there
    const std::size_t n = prof.values.size();
    if (n >= 4) {
        const double growth = prof.values[n - 1] / std::max(prof.values[n - 4], 1e-300);
        if (growth > 1.1) {
            double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
            for (std::size_t i = n - 4; i < n; ++i) {
                const double lx = std::log(1.0 - prof.s_grid[i]);
                const double ly = std::log(prof.values[i]);
                sx += lx;
                sy += ly;
                sxx += lx * lx;
                sxy += lx * ly;
            }
            prof.divergence_slope = (4.0 * sxy - sx * sy) / (4.0 * sxx - sx * sx);
        }
    }
    return prof;
}

RadialLimit radial_limit(const MapHandle& f, const SpherePoint& w,
                         const std::vector<double>& eps_list) {
    std::vector<double> eps = eps_list;
    if (eps.empty())
        for (int k = 3; k <= 20; ++k) eps.push_back(std::ldexp(1.0, -k));
    if (eps.size() < 4) throw std::invalid_argument("radial_limit: need at least 4 epsilons");
    std::vector<Point> vals;
    vals.reserve(eps.size());
    for (double e : eps) vals.push_back(f(radial_point(1.0 - e, w)));
    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) diffs.push_back(dist(vals[i], vals[i + 1]));
    RadialLimit out;
    out.value = vals.back();
    const std::size_t m = diffs.size();
    const double scale = std::max(koranyi_norm(vals.back()), 1.0);
    double worst = 0.0;
    for (std::size_t i = m - 3; i < m; ++i) {
        if (diffs[i - 1] <= 1e-13 * scale) continue;  // already at rounding level
        worst = std::max(worst, diffs[i] / diffs[i - 1]);
    }
    out.contraction = worst;
    out.converged = worst <= 0.75;
    return out;
}

Point boundary_trace(const MapHandle& f, const SpherePoint& w, double eps) {
    return f(radial_point(1.0 - eps, w));
}

bool in_nt_region(const Point& q, const SpherePoint& w, double kappa, const QuadSpec& quad) {
    if (!(koranyi_norm(q) < 1.0)) throw std::invalid_argument("in_nt_region: q must lie in B");
    const double db = dist_to_sphere(q, quad).value;
    return dist(q, embed(w)) < (1.0 + kappa) * db;
}

bool shadow_contains(const Point& x, const SpherePoint& w, double kappa, const QuadSpec& quad) {
    return in_nt_region(x, w, kappa, quad);
}

double nt_maximal_field(const ScalarField& h, const SpherePoint& w, double kappa,
                        const QuadSpec& quad) {
    const Point pw = embed(w);
    double best = 0.0;
    const int ns = std::clamp(quad.n_s / 4, 12, 48);
    const int noff = 5;
    for (int k = 0; k <= ns; ++k) {
        // s-grid accumulating at the boundary
        const double oneminus = std::exp(std::log(0.9) + (std::log(1e-5) - std::log(0.9)) * k / ns);
        const double s = 1.0 - oneminus;
        const double admissible = (1.0 + kappa) * oneminus;
        // the curve of w itself is in the cone by construction
        best = std::max(best, h(radial_point(s, w)));
        // neighborhood grid, scaled to the cap diameter; sufficient membership
        // test d(q,w) < (1+kappa)(1-s) keeps the sup a lower bound
        const double da = 1.5 * admissible;
        const double dp = 3.0 * admissible / std::max(std::sqrt(std::cos(w.alpha)), 1e-3);
        for (int i = -noff; i <= noff; ++i)
            for (int j = -noff; j <= noff; ++j) {
                if (i == 0 && j == 0) continue;
                const double alpha =
                    std::clamp(w.alpha + da * i / noff, -kHalfPi + 1e-9, kHalfPi - 1e-9);
                const SpherePoint wp{alpha, w.phi + dp * j / noff};
                const Point q = radial_point(s, wp);
                if (dist(q, pw) < admissible) best = std::max(best, h(q));
            }
    }
    return best;
}

double nt_maximal(const MapHandle& f, const SpherePoint& w, double kappa, const QuadSpec& quad) {
    return nt_maximal_field([&](const Point& q) { return koranyi_norm(f(q)); }, w, kappa, quad);
}

ScanReport CarlesonEstimate::report(const std::string& experiment) const {
    ScanReport rep;
    rep.experiment = experiment;
    rep.param("alpha", alpha);
    rep.columns = {"alpha", "phi", "r", "value", "ratio"};
    for (const CarlesonCell& c : cells)
        rep.rows.push_back({c.center.alpha, c.center.phi, c.r, c.mass, c.ratio});
    rep.stat("gamma_hat", gamma_hat);
    if (!cells.empty()) {
        rep.stat("argmax_alpha", cells[argmax].center.alpha);
        rep.stat("argmax_r", cells[argmax].r);
    }
    rep.pass = std::isfinite(gamma_hat);
    return rep;
}

CarlesonEstimate carleson_constant(const ScalarField& density, double alpha,
                                   const std::vector<double>& scales,
                                   const std::vector<SpherePoint>& centers, const QuadSpec& quad) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("carleson_constant: alpha must be >= 1");
    CarlesonEstimate est;
    est.alpha = alpha;
    est.cells.resize(scales.size() * centers.size());
    parallel_for(est.cells.size(), [&](std::size_t idx) {
        const double r = scales[idx / centers.size()];
        const SpherePoint& c = centers[idx % centers.size()];
        const Point pc = embed(c);
        SplitMix64 rng = cell_rng(quad.seed, idx);
        const double r2 = r * r;
        const double r4 = r2 * r2;
        const std::int64_t n = std::max<std::int64_t>(quad.mc_samples / 10, 2000);
        double acc = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            const Point u{rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r2, r2)};
            if (koranyi_norm4(u) >= r4) continue;
            const Point q = group_mul(pc, u);
            if (koranyi_norm4(q) >= 1.0) continue;
            const double v = density(q);
            if (!std::isfinite(v))
                throw std::runtime_error("carleson_constant: divergent cell integrand");
            acc += v;
        }
        const double box = 8.0 * r4;  // [-r,r]^2 x [-r^2,r^2]
        CarlesonCell cell;
        cell.center = c;
        cell.r = r;
        cell.mass = acc * box / static_cast<double>(n);
        cell.ratio = cell.mass / std::pow(r, 3.0 * alpha);
        est.cells[idx] = cell;
    });
    for (std::size_t i = 0; i < est.cells.size(); ++i)
        if (est.cells[i].ratio > est.gamma_hat) {
            est.gamma_hat = est.cells[i].ratio;
            est.argmax = i;
        }
    return est;
}

ScalarField qc_carleson_density(const MapHandle& f, double p, const QuadSpec& quad) {
    if (!(p > 0.0 && p < 4.0))
        throw std::invalid_argument("qc_carleson_density: p outside (0,4)");
    const PointMap eval = f.eval;
    return [eval, p, quad](const Point& q) {
        const double nf = koranyi_norm(eval(q));
        if (nf == 0.0) throw std::domain_error("qc_carleson_density: f vanishes");
        const double dh = horiz_derivative(eval, q).operator_norm();
        double v = std::pow(dh / nf, p);
        if (p != 1.0) {
            const double db = dist_to_sphere(q, quad).value;
            v *= std::pow(db, p - 1.0);
        }
        return v;
    };
}

ScalarField grad_log_norm_density(const MapHandle& f) {
    const PointMap eval = f.eval;
    return [eval](const Point& q) {
        const double nf = koranyi_norm(eval(q));
        if (nf == 0.0) throw std::domain_error("grad_log_norm_density: f vanishes");
        const HorizontalVector g = horiz_gradient(
            [&eval](const Point& p) { return std::log(koranyi_norm(eval(p))); }, q);
        return g.frame_norm();
    };
}

double ap_norm(const MapHandle& f, double p, const QuadSpec& quad) {
    if (!(p > 0.0)) throw std::invalid_argument("ap_norm: p must be positive");
    const double integral = polar_integrate(
        [&](const Point& q) { return std::pow(koranyi_norm(f(q)), p); }, 0.0, 1.0, quad);
    return std::pow(integral, 1.0 / p);
}

EmbeddingCheck embedding_check(const MapHandle& f, const ScalarField& mu_density, double p,
                               double alpha, const QuadSpec& quad) {
    EmbeddingCheck out;
    out.lhs = polar_integrate(
        [&](const Point& q) {
            return std::pow(koranyi_norm(f(q)), alpha * p) * mu_density(q);
        },
        0.0, 1.0, quad);
    const double boundary = integrate_sphere(
        [&](const SpherePoint& w) { return std::pow(koranyi_norm(boundary_trace(f, w)), p); },
        MeasureKind::S3, quad);
    out.rhs = std::pow(boundary, alpha);
    if (!std::isfinite(out.lhs) || !std::isfinite(out.rhs))
        throw std::runtime_error("embedding_check: divergent integral");
    out.ratio = out.lhs / out.rhs;
    return out;
}

MaxCriterionCheck max_criterion_check(const MapHandle& f, double p, const QuadSpec& quad) {
    // pre-translate so that f(0) = 0
    const Point f0 = f(Point{});
    const MapHandle g = compose(translation_map(group_inverse(f0)), f, f.name + "~centred");
    MaxCriterionCheck out;
    out.lhs = integrate_sphere(
        [&](const SpherePoint& w) { return std::pow(koranyi_norm(boundary_trace(g, w)), p); },
        MeasureKind::S3, quad);
    const int nr = std::clamp(quad.n_s / 8, 8, 24);
    const QuadNodes rn = gauss_legendre(nr, 0.0, 1.0);
    std::vector<double> contrib(rn.x.size());
    parallel_for(rn.x.size(), [&](std::size_t i) {
        const double r = rn.x[i];
        const double m = big_M(r, g.eval, quad);
        contrib[i] = rn.w[i] * (1.0 - r) * (1.0 - r) * std::pow(m, p);
    });
    out.rhs = 0.0;
    for (double c : contrib) out.rhs += c;
    if (!std::isfinite(out.lhs) || !std::isfinite(out.rhs))
        throw std::runtime_error("max_criterion_check: divergent integral");
    out.fitted_c = out.lhs / out.rhs;
    return out;
}

}  // namespace heis
