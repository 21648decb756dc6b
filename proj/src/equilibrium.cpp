#include "spheq/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

#include "spheq/potentials.hpp"
#include "spheq/root_finding.hpp"
#include "spheq/special_functions.hpp"
#include "spheq/spheroid.hpp"

namespace spheq {

StationarityCoeffs coeff_ab(double t, int n) {
    const double st = std::sqrt(t);
    const double hv = h(t, n);
    const double hp = h_prime(t, n);
    StationarityCoeffs c;
    c.a = (n - 1) * st * hv + n * t * st * hp + 1.0;
    c.b = -0.5 * n * (n - 2) * st * hv + (n - 2);
    return c;
}

double stationarity_f(double t, double alpha, int n) {
    const auto c = coeff_ab(t, n);
    return (c.a * alpha + c.b) / std::sqrt(t);
}

namespace {

double solve_root(double alpha, int n, double residual_tol) {
    double lo, hi;
    if (alpha > 0) {
        lo = 1e-8;
        hi = 1.0;
    } else {
        lo = 1.0;
        hi = 2.0;
        while (stationarity_f(hi, alpha, n) <= 0.0) {
            hi *= 2.0;
            if (hi > 1e12)
                throw BracketError("solve_aspect_ratio: no sign change of F on (1, 1e12)");
        }
    }
    auto f = [alpha, n](double t) { return stationarity_f(t, alpha, n); };
    const double t = brent(f, lo, hi, 1e-15);
    const double resid = std::abs(stationarity_f(t, alpha, n));
    if (resid > residual_tol)
        throw std::runtime_error("solve_aspect_ratio: residual " + std::to_string(resid) +
                                 " above tolerance");
    return t;
}

}  // namespace

double solve_aspect_ratio(double alpha, int n, double residual_tol) {
    check_dimension(n);
    if (!alpha_solvable({n, alpha}))
        throw std::domain_error("solve_aspect_ratio: alpha must lie in (-1, n-2]");
    if (alpha == 0.0) return 1.0;
    return solve_root(alpha, n, residual_tol);
}

double semi_axis_b(double t, double alpha, int n) {
    const double bn = (n - 2 + alpha) / std::sqrt(t) - alpha * h(t, n);
    if (!(bn > 0.0)) throw std::runtime_error("semi_axis_b: non-positive b^n");
    return std::pow(bn, 1.0 / n);
}

EquilibriumSolution solve_equilibrium(double alpha, int n) {
    EquilibriumSolution sol;
    sol.params = {n, alpha};
    if (alpha == 0.0) {
        check_dimension(n);
        sol.t = 1.0;
        sol.b = std::pow(static_cast<double>(n - 2), 1.0 / n);
        sol.a = sol.b;
        sol.residual = 0.0;
    } else {
        sol.t = solve_aspect_ratio(alpha, n);
        sol.b = semi_axis_b(sol.t, alpha, n);
        sol.a = sol.b * std::sqrt(sol.t);
        sol.residual = std::abs(stationarity_f(sol.t, alpha, n));
    }
    sol.c_alpha = el_constant(Spheroid(sol.a, sol.b, n), alpha);
    return sol;
}

LimitingEquilibrium limiting_equilibrium(int n) {
    check_dimension(n);
    LimitingEquilibrium lim;
    lim.t_star = solve_root(-1.0, n, 1e-10);
    const double hv = h(lim.t_star, n);
    lim.b_star = std::pow(lim.t_star, -1.0 / (2 * n)) *
                 std::pow(n - 3 + std::sqrt(lim.t_star) * hv, 1.0 / n);
    lim.residual = std::abs(stationarity_f(lim.t_star, -1.0, n));
    return lim;
}

}  // namespace spheq
