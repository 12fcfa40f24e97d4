#pragma once

#include <cmath>
#include <stdexcept>

namespace heis {

// Point of the first Heisenberg group in coordinates (x, y, t).
// The group product twists the third coordinate:
//   (x,y,t)*(x',y',t') = (x+x', y+y', t+t' - 2xy' + 2yx').
struct Point {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;

    friend constexpr bool operator==(const Point&, const Point&) = default;
};

constexpr Point group_mul(const Point& p, const Point& q) {
    return {p.x + q.x, p.y + q.y, p.t + q.t - 2.0 * p.x * q.y + 2.0 * p.y * q.x};
}

constexpr Point group_inverse(const Point& p) { return {-p.x, -p.y, -p.t}; }

// |z|^2 = x^2 + y^2
constexpr double planar_norm_sq(const Point& p) { return p.x * p.x + p.y * p.y; }

inline double planar_norm(const Point& p) { return std::hypot(p.x, p.y); }

// Fourth power of the Koranyi gauge, |z|^4 + t^2.  Cheap and cancellation-free;
// prefer it in optimization loops.
constexpr double koranyi_norm4(const Point& p) {
    const double z2 = planar_norm_sq(p);
    return z2 * z2 + p.t * p.t;
}

// sqrt(sqrt(.)) is a correctly-rounded-to-2ulp fourth root and much cheaper
// than pow in the solver hot loops.
inline double fourth_root(double v) { return std::sqrt(std::sqrt(v)); }

inline double koranyi_norm(const Point& p) { return fourth_root(koranyi_norm4(p)); }

inline double dist(const Point& p, const Point& q) {
    return koranyi_norm(group_mul(group_inverse(q), p));
}

inline double dist4(const Point& p, const Point& q) {
    return koranyi_norm4(group_mul(group_inverse(q), p));
}

// delta_rho(z,t) = (rho z, rho^2 t)
inline Point dilate(double rho, const Point& p) {
    if (!(rho > 0.0)) throw std::invalid_argument("dilate: rho must be positive");
    return {rho * p.x, rho * p.y, rho * rho * p.t};
}

// Rotation about the vertical axis; acts on z, fixes t.
inline Point rotate(double theta, const Point& p) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * p.x - s * p.y, s * p.x + c * p.y, p.t};
}

// Tangent vector a*X + b*Y at a base point, X = (1,0,2y), Y = (0,1,-2x).
struct HorizontalVector {
    Point base;
    double a = 0.0;
    double b = 0.0;

    double frame_norm() const { return std::hypot(a, b); }
};

struct HorizontalFrame {
    HorizontalVector X;
    HorizontalVector Y;
};

inline HorizontalFrame horizontal_frame(const Point& p) {
    return {HorizontalVector{p, 1.0, 0.0}, HorizontalVector{p, 0.0, 1.0}};
}

// Frame vectors as ambient R^3 vectors (for tests against the span formula).
inline Point frame_x_ambient(const Point& p) { return {1.0, 0.0, 2.0 * p.y}; }
inline Point frame_y_ambient(const Point& p) { return {0.0, 1.0, -2.0 * p.x}; }

// Flow of X resp. Y for time h: right translation by (h,0,0) resp. (0,h,0).
constexpr Point flow_x(const Point& p, double h) { return group_mul(p, Point{h, 0.0, 0.0}); }
constexpr Point flow_y(const Point& p, double h) { return group_mul(p, Point{0.0, h, 0.0}); }

}  // namespace heis
