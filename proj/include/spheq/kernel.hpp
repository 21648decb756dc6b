#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spheq {

// One member of the energy family: dimension n >= 3 and anisotropy strength
// alpha.  Pointwise kernel evaluation accepts any real alpha; equilibrium
// solving is restricted to alpha in (-1, n-2].
struct EnergyParams {
    int n = 3;
    double alpha = 0.0;
};

inline void check_dimension(int n) {
    if (n < 3 || n > 16) throw std::domain_error("dimension n must be an integer in [3,16]");
}

inline bool alpha_solvable(const EnergyParams& p) {
    return p.alpha > -1.0 && p.alpha <= static_cast<double>(p.n - 2);
}

namespace detail {
inline double int_pow(double x, int k) {
    double r = 1.0;
    for (; k > 0; --k) r *= x;
    return r;
}
}  // namespace detail

// Gamma(m/2) for integer m >= 1, by the half-integer recursion.
inline double gamma_half_integer(int m) {
    if (m < 1) throw std::domain_error("gamma_half_integer: m must be >= 1");
    double g = (m % 2 == 0) ? 1.0 : std::sqrt(M_PI);
    for (double x = (m % 2 == 0) ? 1.0 : 0.5; x < 0.5 * m - 0.25; x += 1.0) g *= x;
    return g;
}

// pi^{n/2-2} / (2 Gamma(n/2)), the prefactor of the kernel's Fourier transform
inline double fourier_prefactor(int n) {
    return std::pow(M_PI, 0.5 * n - 2.0) / (2.0 * gamma_half_integer(n));
}

// W_alpha(x) = |x|^{2-n} + alpha x_1^2 / |x|^n, extended with +inf at x = 0.
template <class Derived>
double w_alpha(const Eigen::MatrixBase<Derived>& x, const EnergyParams& p) {
    const double r2 = x.squaredNorm();
    if (r2 == 0.0) return std::numeric_limits<double>::infinity();
    const double r = std::sqrt(r2);
    const double rn = detail::int_pow(r, p.n);
    const double x1 = x[0];
    return r2 / rn + p.alpha * x1 * x1 / rn;
}

// accumulate scale * grad W_alpha(x) into acc (x != 0)
template <class Derived, class Out>
void accumulate_grad_w_alpha(const Eigen::MatrixBase<Derived>& x, const EnergyParams& p,
                             double scale, Eigen::MatrixBase<Out>& acc) {
    const double r2 = x.squaredNorm();
    if (r2 == 0.0) throw std::domain_error("grad_w_alpha: undefined at x = 0");
    const double r = std::sqrt(r2);
    const double inv_rn = 1.0 / detail::int_pow(r, p.n);
    const double x1 = x[0];
    // grad |x|^{2-n} = -(n-2) x |x|^{-n}
    // grad (x_1^2 |x|^{-n}) = 2 x_1 |x|^{-n} e_1 - n x_1^2 |x|^{-n-2} x
    const double radial = -(p.n - 2) * inv_rn - p.alpha * p.n * x1 * x1 * inv_rn / r2;
    acc += (scale * radial) * x;
    acc[0] += scale * p.alpha * 2.0 * x1 * inv_rn;
}

template <class Derived>
Eigen::VectorXd grad_w_alpha(const Eigen::MatrixBase<Derived>& x, const EnergyParams& p) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
    accumulate_grad_w_alpha(x, p, 1.0, g);
    return g;
}

// Fourier transform of W_alpha as an L^1_loc density, xi != 0:
//   pref(n) * ((n-2-alpha) xi_1^2 + (n-2+alpha) sum_{i>=2} xi_i^2) / |xi|^4
template <class Derived>
double w_hat_alpha(const Eigen::MatrixBase<Derived>& xi, const EnergyParams& p) {
    const double q2 = xi.squaredNorm();
    if (q2 == 0.0) throw std::domain_error("w_hat_alpha: undefined at xi = 0");
    const double xi1sq = xi[0] * xi[0];
    const double num = (p.n - 2 - p.alpha) * xi1sq + (p.n - 2 + p.alpha) * (q2 - xi1sq);
    return fourier_prefactor(p.n) * num / (q2 * q2);
}

// W_{-1}(x) = (x_2^2 + ... + x_n^2)/|x|^n, +inf at 0; equals w_alpha at alpha=-1.
template <class Derived>
double w_minus_one(const Eigen::MatrixBase<Derived>& x, int n) {
    const double r2 = x.squaredNorm();
    if (r2 == 0.0) return std::numeric_limits<double>::infinity();
    const double r = std::sqrt(r2);
    return (r2 - x[0] * x[0]) / detail::int_pow(r, n);
}

// Fourier density of the alpha -> -1 limit functional:
//   pref(n) * ((n-1) xi_1^2 + (n-3) sum_{i>=2} xi_i^2) / |xi|^4
template <class Derived>
double w_hat_star(const Eigen::MatrixBase<Derived>& xi, int n) {
    const double q2 = xi.squaredNorm();
    if (q2 == 0.0) throw std::domain_error("w_hat_star: undefined at xi = 0");
    const double xi1sq = xi[0] * xi[0];
    const double num = (n - 1) * xi1sq + (n - 3) * (q2 - xi1sq);
    return fourier_prefactor(n) * num / (q2 * q2);
}

}  // namespace spheq
