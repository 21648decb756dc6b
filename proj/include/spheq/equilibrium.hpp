#pragma once

#include "spheq/kernel.hpp"

namespace spheq {

// Solved equilibrium spheroid for one (n, alpha): aspect ratio t = a^2/b^2,
// semi-axes, Euler-Lagrange constant, and the residual |F(t,alpha)|.
struct EquilibriumSolution {
    EnergyParams params;
    double t;
    double a;
    double b;
    double c_alpha;
    double residual;
};

// Coefficients of the stationarity equation F(t,alpha) = (A(t) alpha + B(t))/sqrt(t):
//   A(t) = (n-1) sqrt(t) H(t) + n t^{3/2} H'(t) + 1
//   B(t) = -(n(n-2)/2) sqrt(t) H(t) + (n-2)
struct StationarityCoeffs {
    double a;
    double b;
};
StationarityCoeffs coeff_ab(double t, int n);

double stationarity_f(double t, double alpha, int n);

// Root of F(.,alpha) = 0; lies in (0,1) for alpha > 0, equals 1 at alpha = 0,
// and lies in (1,inf) for alpha < 0.  alpha must be in (-1, n-2].
double solve_aspect_ratio(double alpha, int n, double residual_tol = 1e-10);

// Transverse semi-axis from b^n = (n-2+alpha)/sqrt(t) - alpha H(t).
double semi_axis_b(double t, double alpha, int n);

// Full solve: t, b, a = b sqrt(t), and C_alpha from the boundary profile.
EquilibriumSolution solve_equilibrium(double alpha, int n);

// alpha -> -1 limit: t* > 1 solving F(t,-1) = 0 and
// b* = t*^{-1/(2n)} (n-3 + sqrt(t*) H(t*))^{1/n}.
struct LimitingEquilibrium {
    double t_star;
    double b_star;
    double residual;
};
LimitingEquilibrium limiting_equilibrium(int n);

}  // namespace spheq
