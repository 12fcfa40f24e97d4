#include "heis/horiz.hpp"

#include <algorithm>
#include <cmath>

namespace heis {

HorizMatrix horiz_derivative(const PointMap& f, const Point& q, double h) {
    const Point fxp = f(flow_x(q, h)), fxm = f(flow_x(q, -h));
    const Point fyp = f(flow_y(q, h)), fym = f(flow_y(q, -h));
    const double inv2h = 1.0 / (2.0 * h);

    HorizMatrix m;
    m.xx = (fxp.x - fxm.x) * inv2h;
    m.yx = (fxp.y - fxm.y) * inv2h;
    m.xy = (fyp.x - fym.x) * inv2h;
    m.yy = (fyp.y - fym.y) * inv2h;

    // Contact condition: Xf, Yf must lie in the horizontal plane at f(q),
    // i.e. the third component equals 2 f2 (Xf1) - 2 f1 (Xf2), and likewise
    // along Y.
    const Point fq = f(q);
    const double xf3 = (fxp.t - fxm.t) * inv2h;
    const double yf3 = (fyp.t - fym.t) * inv2h;
    const double rx = xf3 - (2.0 * fq.y * m.xx - 2.0 * fq.x * m.yx);
    const double ry = yf3 - (2.0 * fq.y * m.xy - 2.0 * fq.x * m.yy);
    m.contact_residual = std::max(std::abs(rx), std::abs(ry));
    return m;
}

RefinedHorizMatrix horiz_derivative_refined(const PointMap& f, const Point& q, double h) {
    const HorizMatrix coarse = horiz_derivative(f, q, h);
    const HorizMatrix fine = horiz_derivative(f, q, 0.5 * h);
    RefinedHorizMatrix out;
    // (4 D(h/2) - D(h)) / 3 cancels the O(h^2) truncation term.
    out.value.xx = (4.0 * fine.xx - coarse.xx) / 3.0;
    out.value.xy = (4.0 * fine.xy - coarse.xy) / 3.0;
    out.value.yx = (4.0 * fine.yx - coarse.yx) / 3.0;
    out.value.yy = (4.0 * fine.yy - coarse.yy) / 3.0;
    out.value.contact_residual = fine.contact_residual;
    out.fd_error = std::max({std::abs(fine.xx - coarse.xx), std::abs(fine.xy - coarse.xy),
                             std::abs(fine.yx - coarse.yx), std::abs(fine.yy - coarse.yy)});
    return out;
}

HorizontalVector horiz_gradient(const ScalarField& u, const Point& q, double h) {
    const double inv2h = 1.0 / (2.0 * h);
    HorizontalVector v;
    v.base = q;
    v.a = (u(flow_x(q, h)) - u(flow_x(q, -h))) * inv2h;
    v.b = (u(flow_y(q, h)) - u(flow_y(q, -h))) * inv2h;
    return v;
}

HorizontalVector grad_koranyi_norm(const Point& q, double h) {
    if (koranyi_norm4(q) == 0.0)
        throw std::invalid_argument("grad_koranyi_norm: gauge is not differentiable at 0");
    return horiz_gradient([](const Point& p) { return koranyi_norm(p); }, q, h);
}

}  // namespace heis
