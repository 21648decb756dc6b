#include "spheq/special_functions.hpp"

#include <cmath>
#include <stdexcept>

#include "spheq/kernel.hpp"
#include "spheq/quadrature.hpp"

namespace spheq {

namespace {

// |t-1| below which the integrals are evaluated by direct quadrature
constexpr double kQuadWidth = 1e-3;
// the closed forms lose ~|1-t|^{-(n/2+1)} digits to cancellation near t=1, so
// between these widths the binomial series around t=1 takes over
constexpr double kSeriesWidth = 0.5;

void check_args(double t, int n) {
    if (!(t > 0.0)) throw std::domain_error("H(t): t must be positive");
    check_dimension(n);
}

// int_x^1 (1-u^2)^k du for half-integer k >= -1/2, by the downward-stable
// reduction int (1-u^2)^k = [u(1-u^2)^k + 2k int (1-u^2)^{k-1}] / (2k+1)
double one_minus_u2_integral(double x, double k) {
    if (std::abs(k + 0.5) < 0.25) return std::acos(x);
    if (std::abs(k) < 0.25) return 1.0 - x;
    return (-x * std::pow(1.0 - x * x, k) + 2.0 * k * one_minus_u2_integral(x, k - 1.0)) /
           (2.0 * k + 1.0);
}

// int_1^x (u^2-1)^k du for half-integer k >= -1/2
double u2_minus_one_integral(double x, double k) {
    if (std::abs(k + 0.5) < 0.25) return std::acosh(x);
    if (std::abs(k) < 0.25) return x - 1.0;
    return (x * std::pow(x * x - 1.0, k) - 2.0 * k * u2_minus_one_integral(x, k - 1.0)) /
           (2.0 * k + 1.0);
}

// int_t^1 |1-s|^{n/2-2} s^{-1/2} ds, signed branch per side of t=1
double incomplete_branch_integral(double t, int n) {
    const double k = 0.5 * n - 2.0;
    if (t < 1.0) return 2.0 * one_minus_u2_integral(std::sqrt(t), k);
    return -2.0 * u2_minus_one_integral(std::sqrt(t), k);
}

double h_closed(double t, int n) {
    const double lead = 2.0 / (std::sqrt(t) * (1.0 - t));
    const double branch = incomplete_branch_integral(t, n);
    return lead - (n - 2) * branch / std::pow(std::abs(1.0 - t), 0.5 * n);
}

double h_prime_closed(double t, int n) {
    const double lead = ((n + 1) * t - 1.0) / (std::pow(t, 1.5) * (1.0 - t) * (1.0 - t));
    const double branch = incomplete_branch_integral(t, n);
    const double sign_factor = (1.0 - t) / std::pow(std::abs(1.0 - t), 0.5 * n + 2.0);
    return lead - 0.5 * n * (n - 2) * sign_factor * branch;
}

double h_quad(double t, int n, double tol = 1e-13) {
    auto f = [t, n](double s) {
        return std::pow(t + s, -1.5) * std::pow(1.0 + s, -0.5 * (n - 1));
    };
    return require_converged(integrate_half_line(f, 0.0, tol, tol), "H(t)");
}

double h_prime_quad(double t, int n, double tol = 1e-13) {
    auto f = [t, n](double s) {
        return std::pow(t + s, -2.5) * std::pow(1.0 + s, -0.5 * (n - 1));
    };
    return -1.5 * require_converged(integrate_half_line(f, 0.0, tol, tol), "H'(t)");
}

// H(1+d) = sum_k binom(-3/2,k) d^k 2/(n+2k); term-wise t-derivative for H'.
double h_series(double t, int n, bool derivative) {
    const double d = t - 1.0;
    double coeff = 1.0;  // binom(-3/2, k)
    double sum = derivative ? 0.0 : 2.0 / n;
    double dpow = 1.0;
    for (int k = 1; k < 80; ++k) {
        coeff *= (-1.5 - (k - 1)) / k;
        double term;
        if (derivative) {
            term = coeff * k * dpow * 2.0 / (n + 2 * k);
            dpow *= d;
        } else {
            dpow *= d;
            term = coeff * dpow * 2.0 / (n + 2 * k);
        }
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

}  // namespace

HEval h_eval(double t, int n, HMethod method) {
    check_args(t, n);
    double v;
    switch (method) {
        case HMethod::quadrature: v = h_quad(t, n); break;
        case HMethod::closed_form:
            if (t == 1.0) throw std::domain_error("closed form undefined at t = 1");
            v = h_closed(t, n);
            break;
        case HMethod::series_near_1:
        default: v = h_series(t, n, false); break;
    }
    return {t, n, v, method};
}

HEval h_prime_eval(double t, int n, HMethod method) {
    check_args(t, n);
    double v;
    switch (method) {
        case HMethod::quadrature: v = h_prime_quad(t, n); break;
        case HMethod::closed_form:
            if (t == 1.0) throw std::domain_error("closed form undefined at t = 1");
            v = h_prime_closed(t, n);
            break;
        case HMethod::series_near_1:
        default: v = h_series(t, n, true); break;
    }
    return {t, n, v, method};
}

double h(double t, int n) {
    check_args(t, n);
    const double d = std::abs(t - 1.0);
    if (d < kQuadWidth) return h_quad(t, n);
    if (d < kSeriesWidth) return h_series(t, n, false);
    return h_closed(t, n);
}

double h_prime(double t, int n) {
    check_args(t, n);
    const double d = std::abs(t - 1.0);
    if (d < kQuadWidth) return h_prime_quad(t, n);
    if (d < kSeriesWidth) return h_series(t, n, true);
    return h_prime_closed(t, n);
}

AuxIntegrals aux_integrals(double t, int n, double tol) {
    check_args(t, n);
    auto j5 = [t, n](double s) {
        return std::pow(t + s, -2.5) * std::pow(1.0 + s, -0.5 * (n - 1));
    };
    auto jb = [t, n](double s) {
        return std::pow(t + s, -0.5) * std::pow(1.0 + s, -0.5 * (n + 1));
    };
    auto jc = [t, n](double s) {
        return std::pow(t + s, -1.5) * std::pow(1.0 + s, -0.5 * (n + 1));
    };
    AuxIntegrals out;
    out.j5 = require_converged(integrate_half_line(j5, 0.0, tol, tol), "j5");
    out.jb = require_converged(integrate_half_line(jb, 0.0, tol, tol), "jb");
    out.jc = require_converged(integrate_half_line(jc, 0.0, tol, tol), "jc");
    return out;
}

double interior_constant_integral(double t, int n) {
    check_args(t, n);
    return (2.0 / std::sqrt(t) + (t - 1.0) * h(t, n)) / (n - 2);
}

}  // namespace spheq
