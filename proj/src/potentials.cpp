#include "spheq/potentials.hpp"

#include <cmath>
#include <stdexcept>

#include "spheq/quadrature.hpp"
#include "spheq/special_functions.hpp"

namespace spheq {

namespace {

constexpr double kBallTol = 1e-6;

void require_exterior(double x1, double r, const Spheroid& s) {
    const double q = x1 * x1 / (s.a * s.a) + r * r / (s.b * s.b);
    if (q < 1.0 - 1e-12) throw std::domain_error("exterior potential requested at interior point");
}

void require_interior(double x1, double r, const Spheroid& s) {
    if (!s.contains(x1, r, 1e-12))
        throw std::domain_error("interior potential requested at exterior point");
}

}  // namespace

InteriorQuadratic interior_quadratic(const Spheroid& s, double alpha) {
    const int n = s.n;
    const double t = s.aspect_ratio();
    const double hv = h(t, n);
    const double hp = h_prime(t, n);
    const double bn = std::pow(s.b, n);
    const double pref = 0.25 * n / bn;
    InteriorQuadratic q;
    q.x1_sq = pref * ((2.0 * alpha - (n - 2)) * hv + 2.0 * alpha * t * hp);
    q.r_sq = pref / (n - 1) *
             (-2.0 * (n - 2 + alpha) / std::sqrt(t) + (n - 2) * hv - 2.0 * alpha * t * hp);
    const double m = interior_constant_integral(t, n);
    q.constant = 0.25 * n / std::pow(s.b, n - 2) * ((n - 2) * m + alpha * t * hv);
    return q;
}

double phi0_inside(double x1, double r, const Spheroid& s) {
    require_interior(x1, r, s);
    const auto q = interior_quadratic(s, 0.0);
    return q.x1_sq * x1 * x1 + q.r_sq * r * r + q.constant;
}

double psi_inside(double x1, double r, const Spheroid& s) {
    require_interior(x1, r, s);
    const int n = s.n;
    const double t = s.aspect_ratio();
    const double hv = h(t, n);
    const double hp = h_prime(t, n);
    const double bn = std::pow(s.b, n);
    const double cx = 0.5 * n / bn * (hv + t * hp);
    const double cr = -0.5 * n / (bn * (n - 1)) * (1.0 / std::sqrt(t) + t * hp);
    const double c0 = 0.25 * n * t * hv / std::pow(s.b, n - 2);
    return cx * x1 * x1 + cr * r * r + c0;
}

double phi_alpha_inside(double x1, double r, const Spheroid& s, double alpha) {
    require_interior(x1, r, s);
    const auto q = interior_quadratic(s, alpha);
    return q.x1_sq * x1 * x1 + q.r_sq * r * r + q.constant;
}

double phi0_outside(double x1, double r, const Spheroid& s, double tol) {
    require_exterior(x1, r, s);
    const int n = s.n;
    if (s.kind() == SpheroidKind::ball) {
        // Coulomb potential of a ball equals the kernel at the point
        return std::pow(x1 * x1 + r * r, 1.0 - 0.5 * n);
    }
    const double a2 = s.a * s.a;
    const double b2 = s.b * s.b;
    const double lam = lambda_root(x1, r, s);
    auto f = [=](double sv) {
        return (1.0 - x1 * x1 / (a2 + sv) - r * r / (b2 + sv)) /
               (std::sqrt(a2 + sv) * std::pow(b2 + sv, 0.5 * (n - 1)));
    };
    const double integral =
        require_converged(integrate_half_line(f, lam, tol, tol), "phi0_outside");
    return 0.25 * n * (n - 2) * integral;
}

Eigen::Vector2d grad_phi0_outside(double x1, double r, const Spheroid& s, double tol) {
    require_exterior(x1, r, s);
    const int n = s.n;
    if (s.kind() == SpheroidKind::ball) {
        const double rho2 = x1 * x1 + r * r;
        const double factor = (2.0 - n) * std::pow(rho2, -0.5 * n);
        return {factor * x1, factor * r};
    }
    const auto sp = to_spheroidal(x1, r, s);
    const double c = sp.c;
    const double c2 = c * c;
    const double lo = c2 * sp.z * sp.z;
    const double sg = (sp.kind == SpheroidKind::oblate) ? 1.0 : -1.0;
    auto t1 = [=](double sv) {
        return std::pow(sv, -1.5) * std::pow(sv + sg * c2, -0.5 * (n - 1));
    };
    auto t2 = [=](double sv) {
        return std::pow(sv, -0.5) * std::pow(sv + sg * c2, -0.5 * (n + 1));
    };
    const double i1 = require_converged(integrate_half_line(t1, lo, tol, tol), "grad_phi0 T1");
    const double i2 = require_converged(integrate_half_line(t2, lo, tol, tol), "grad_phi0 T2");
    const double pref = -0.5 * c * n * (n - 2);
    const double w = (sp.kind == SpheroidKind::oblate) ? (1.0 + sp.z * sp.z) : (sp.z * sp.z - 1.0);
    const double transverse = std::sqrt(std::max(w * (1.0 - sp.rho * sp.rho), 0.0));
    return {pref * sp.z * sp.rho * i1, pref * transverse * i2};
}

double psi_outside(double x1, double r, const Spheroid& s, double tol) {
    require_exterior(x1, r, s);
    if (s.nearly_ball(kBallTol))
        throw std::domain_error("psi_outside: spheroid degenerates to a ball (|t-1| < 1e-6)");
    const double a2 = s.a * s.a;
    const double b2 = s.b * s.b;
    const double phi0 = phi0_outside(x1, r, s, tol);
    const Eigen::Vector2d g = grad_phi0_outside(x1, r, s, tol);
    return a2 / (a2 - b2) * phi0 + (g[0] * b2 * x1 + g[1] * a2 * r) / ((s.n - 2) * (a2 - b2));
}

double phi_alpha_outside(double x1, double r, const Spheroid& s, double alpha, double tol) {
    if (alpha == 0.0) return phi0_outside(x1, r, s, tol);
    return phi0_outside(x1, r, s, tol) + alpha * psi_outside(x1, r, s, tol);
}

double phi_alpha(const Eigen::Ref<const Eigen::VectorXd>& x, const Spheroid& s, double alpha) {
    const auto [x1, r] = meridian(x);
    if (s.contains(x1, r)) return phi_alpha_inside(x1, r, s, alpha);
    return phi_alpha_outside(x1, r, s, alpha);
}

ExteriorProfile exterior_profile(double z, const Spheroid& s, double alpha, double tol) {
    if (s.nearly_ball(kBallTol))
        throw std::domain_error("exterior_profile: spheroid degenerates to a ball");
    const int n = s.n;
    const double c = s.focal();
    const double c2 = c * c;
    const double a2 = s.a * s.a;
    if (z < s.a / c - 1e-12) throw std::domain_error("exterior_profile: z below a/c");
    const double lo = c2 * z * z;
    ExteriorProfile out;
    if (s.kind() == SpheroidKind::oblate) {
        const double k = (n - 2) * c2 - n * alpha * a2;
        auto fa = [=](double sv) {
            return (k * (sv - lo) + 2.0 * alpha * a2 * (sv + c2)) /
                   (c2 * std::sqrt(sv) * std::pow(sv + c2, 0.5 * (n + 1)));
        };
        auto fb = [=](double sv) {
            return (k * (sv - lo) + 2.0 * alpha * lo * (sv + c2)) /
                   (std::pow(sv, 1.5) * std::pow(sv + c2, 0.5 * (n + 1)));
        };
        out.constant_term = 0.25 * n * require_converged(integrate_half_line(fa, lo, tol, tol),
                                                         "profile A (oblate)") +
                            0.5 * c2 * (1.0 + z * z);
        out.rho_sq_term = 0.25 * n * require_converged(integrate_half_line(fb, lo, tol, tol),
                                                       "profile B (oblate)") -
                          0.5 * c2;
    } else {
        const double k = (n - 2) * c2 + n * alpha * a2;
        auto fa = [=](double sv) {
            return (k * (sv - lo) - 2.0 * alpha * a2 * (sv - c2)) /
                   (c2 * std::sqrt(sv) * std::pow(sv - c2, 0.5 * (n + 1)));
        };
        auto fb = [=](double sv) {
            return (-k * (sv - lo) + 2.0 * alpha * lo * (sv - c2)) /
                   (std::pow(sv, 1.5) * std::pow(sv - c2, 0.5 * (n + 1)));
        };
        out.constant_term = 0.25 * n * require_converged(integrate_half_line(fa, lo, tol, tol),
                                                         "profile A (prolate)") +
                            0.5 * c2 * (z * z - 1.0);
        out.rho_sq_term = 0.25 * n * require_converged(integrate_half_line(fb, lo, tol, tol),
                                                       "profile B (prolate)") +
                          0.5 * c2;
    }
    return out;
}

double profile_curvature_equator(double z, const Spheroid& s, double alpha) {
    const int n = s.n;
    const double c = s.focal();
    const double c2 = c * c;
    const double w = (s.kind() == SpheroidKind::oblate) ? (1.0 + z * z) : (z * z - 1.0);
    const double pref = n / (std::pow(c, n - 2) * z * z * std::pow(w, 0.5 * (n + 1)));
    return pref * ((n - 2) * z * z + alpha * s.a * s.a / c2);
}

double profile_curvature_axis(double z, const Spheroid& s, double alpha) {
    const int n = s.n;
    const double c = s.focal();
    const double c2 = c * c;
    const double ratio = s.a * s.a / c2;
    double inner;
    double w;
    if (s.kind() == SpheroidKind::oblate) {
        w = 1.0 + z * z;
        inner = (n - 2) * (1.0 + alpha) * z * z + (n - 2 - alpha) - alpha * ratio * (n - 1);
    } else {
        w = z * z - 1.0;
        inner = (n - 2) * (1.0 + alpha) * z * z - (n - 2) + alpha - alpha * ratio * (n - 1);
    }
    return n / (std::pow(c, n - 2) * z * z * std::pow(w, 0.5 * (n + 1))) * inner;
}

double el_constant(const Spheroid& s, double alpha) {
    const double interior = interior_quadratic(s, alpha).constant;
    if (s.nearly_ball(kBallTol)) return interior;
    const double boundary = exterior_profile(s.a / s.focal(), s, alpha).constant_term;
    if (std::abs(boundary - interior) > 1e-8 * std::max(1.0, std::abs(boundary)))
        throw std::runtime_error("el_constant: boundary and interior values disagree");
    return boundary;
}

double el_constant(const EquilibriumSolution& sol) {
    return el_constant(Spheroid(sol.a, sol.b, sol.params.n), sol.params.alpha);
}

}  // namespace spheq
