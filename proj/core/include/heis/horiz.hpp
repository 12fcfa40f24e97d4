#pragma once

#include <functional>

#include "heis/point.hpp"

namespace heis {

using PointMap = std::function<Point(const Point&)>;
using ScalarField = std::function<double(const Point&)>;

// Formal horizontal derivative in the frame {X, Y}:
//   [ Xf1  Yf1 ]
//   [ Xf2  Yf2 ]
// contact_residual records how far Xf and Yf are from the horizontal plane
// at f(q); it vanishes for contact maps.
struct HorizMatrix {
    double xx = 0.0, xy = 0.0;  // Xf1, Yf1
    double yx = 0.0, yy = 0.0;  // Xf2, Yf2
    double contact_residual = 0.0;

    double det() const { return xx * yy - xy * yx; }

    // J_f = (det D_H f)^2
    double jacobian() const {
        const double d = det();
        return d * d;
    }

    // Largest singular value of the 2x2 block, closed form.
    double operator_norm() const {
        const double g = xx * xx + xy * xy + yx * yx + yy * yy;
        const double d = det();
        const double disc = std::sqrt(std::max(0.0, g * g - 4.0 * d * d));
        return std::sqrt(0.5 * (g + disc));
    }
};

inline constexpr double kDefaultFdStep = 1e-5;

// Central differences along the group flows q*(+-h,0,0), q*(0,+-h,0).
HorizMatrix horiz_derivative(const PointMap& f, const Point& q, double h = kDefaultFdStep);

// Richardson cross-check: returns the h/2 extrapolant and an error estimate
// (max entrywise difference between the h and h/2 matrices).
struct RefinedHorizMatrix {
    HorizMatrix value;
    double fd_error = 0.0;
};
RefinedHorizMatrix horiz_derivative_refined(const PointMap& f, const Point& q,
                                            double h = kDefaultFdStep);

// Finite-difference horizontal gradient of a scalar field.
HorizontalVector horiz_gradient(const ScalarField& u, const Point& q, double h = kDefaultFdStep);

// |grad_H ||.||| at q (finite differences).  Matches |z|/||q|| up to O(h^2).
// Throws on q = 0.
HorizontalVector grad_koranyi_norm(const Point& q, double h = kDefaultFdStep);

}  // namespace heis
