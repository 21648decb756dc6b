#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace spheq {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// 15-point Kronrod nodes on [-1,1] (positive half) with the embedded 7-point
// Gauss rule on the odd-indexed nodes.  Values from QUADPACK dqk15.
inline constexpr double kGkNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gauss_kronrod_15(F&& f, double a, double b, double& value, double& error) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_mid = f(mid);
    double kronrod = kKronrodWeights[7] * f_mid;
    double gauss = kGaussWeights[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGkNodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    value = kronrod * half;
    error = std::abs((kronrod - gauss) * half);
}

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& other) const { return error < other.error; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration on [a,b].  Bisects the interval
// with the largest error estimate until sum(err) <= max(abs_tol, rel_tol*|I|).
// Integrable endpoint singularities are fine: nodes never touch the endpoints
// and subdivision stops only at the resolution floor of double precision.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-10,
                              double rel_tol = 1e-10, int max_intervals = 8000) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::vector<detail::Interval> heap;
    heap.reserve(256);
    detail::Interval first{a, b, 0, 0};
    detail::gauss_kronrod_15(f, a, b, first.value, first.error);
    heap.push_back(first);
    double total_value = first.value;
    double total_error = first.error;
    double floor_error = 0.0;  // error of intervals too small to split further


    while (static_cast<int>(heap.size()) < max_intervals) {
        const double tol = std::max(abs_tol, rel_tol * std::abs(total_value));
        if (total_error <= tol) break;
        std::pop_heap(heap.begin(), heap.end());
        detail::Interval worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval collapsed to machine resolution; bank it and its error
            floor_error += worst.error;
            total_error -= worst.error;
            if (heap.empty()) break;
            continue;
        }
        detail::Interval left{worst.a, mid, 0, 0};
        detail::Interval right{mid, worst.b, 0, 0};
        detail::gauss_kronrod_15(f, left.a, left.b, left.value, left.error);
        detail::gauss_kronrod_15(f, right.a, right.b, right.value, right.error);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
    }

    out.value = total_value;
    out.error = total_error + floor_error;
    out.intervals = static_cast<int>(heap.size());
    out.converged = out.error <= std::max(abs_tol, rel_tol * std::abs(total_value));
    return out;
}

// Integral over (lower, inf), mapped onto (0,1) by sigma = lower + (u/(1-u))^2.
// The quadratic map keeps integrands with sigma^{-3/2} tails bounded at u=1,
// which the linear map u/(1-u) does not.
template <class F>
QuadResult integrate_half_line(F&& f, double lower, double abs_tol = 1e-10,
                               double rel_tol = 1e-10, int max_intervals = 8000) {
    auto g = [&f, lower](double u) {
        if (u <= 0.0 || u >= 1.0) return 0.0;  // rounding guard at the map's poles
        const double om = 1.0 - u;
        const double y = u / om;
        const double jac = 2.0 * y / (om * om);
        return f(lower + y * y) * jac;
    };
    return integrate_adaptive(g, 0.0, 1.0, abs_tol, rel_tol, max_intervals);
}

inline double require_converged(const QuadResult& r, const char* what) {
    if (!r.converged) {
        throw QuadratureError(std::string("adaptive quadrature failed to converge: ") + what +
                              " (error estimate " + std::to_string(r.error) + ")");
    }
    return r.value;
}

}  // namespace spheq
