#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

#include "spheq/kernel.hpp"

namespace spheq {

enum class SpheroidKind { oblate, prolate, ball };

// volume of the unit ball in R^n
inline double unit_ball_volume(int n) {
    return std::pow(M_PI, 0.5 * n) / gamma_half_integer(n + 2);
}

// Spheroid with semi-axis a along x_1 and equal semi-axes b in all other
// directions.  All potentials are rotationally symmetric about the x_1 axis,
// so points are usually handled in meridian form (x_1, r) with r = |x'|.
struct Spheroid {
    double a;
    double b;
    int n;

    Spheroid(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
        check_dimension(n);
        if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("spheroid semi-axes must be positive");
    }

    double aspect_ratio() const { return a * a / (b * b); }
    double focal() const { return std::sqrt(std::abs(a * a - b * b)); }
    double volume() const { return unit_ball_volume(n) * a * std::pow(b, n - 1); }

    SpheroidKind kind() const {
        if (a < b) return SpheroidKind::oblate;
        if (a > b) return SpheroidKind::prolate;
        return SpheroidKind::ball;
    }
    bool nearly_ball(double tol = 1e-6) const { return std::abs(aspect_ratio() - 1.0) < tol; }

    bool contains(double x1, double r, double slack = 0.0) const {
        return x1 * x1 / (a * a) + r * r / (b * b) <= 1.0 + slack;
    }
    template <class Derived>
    bool contains(const Eigen::MatrixBase<Derived>& x, double slack = 0.0) const {
        return contains(x[0], x.tail(x.size() - 1).norm(), slack);
    }
};

inline std::pair<double, double> meridian(const Eigen::Ref<const Eigen::VectorXd>& x) {
    return {x[0], x.tail(x.size() - 1).norm()};
}

// Largest root lambda of x_1^2/(a^2+lambda) + r^2/(b^2+lambda) = 1; the
// confocal parameter of an exterior point.  Zero on the boundary.
double lambda_root(double x1, double r, const Spheroid& s);
double lambda_root(const Eigen::Ref<const Eigen::VectorXd>& x, const Spheroid& s);

// Oblate / prolate spheroidal coordinates of a meridian point:
//   oblate  (c^2 = b^2-a^2): x1 = c z rho, r = c sqrt((1+z^2)(1-rho^2))
//   prolate (c^2 = a^2-b^2): x1 = c z rho, r = c sqrt((z^2-1)(1-rho^2)), z >= 1
// The closed exterior region corresponds to z >= a/c.
struct SpheroidalPoint {
    double z;
    double rho;
    double c;
    SpheroidKind kind;
};

SpheroidalPoint to_spheroidal(double x1, double r, const Spheroid& s);
std::pair<double, double> spheroidal_to_meridian(const SpheroidalPoint& p);

}  // namespace spheq
