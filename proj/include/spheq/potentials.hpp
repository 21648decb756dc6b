#pragma once

#include <Eigen/Core>

#include "spheq/equilibrium.hpp"
#include "spheq/spheroid.hpp"

namespace spheq {

// Potentials of the normalised uniform measure on a spheroid:
//   Phi_0   = Coulomb part, Psi = anisotropic part, Phi_alpha = Phi_0 + alpha Psi.
// Inside the spheroid every potential is an even quadratic in (x_1, r); outside
// they are evaluated through confocal coordinates.

// Interior quadratic Phi_alpha(x) = x1_sq * x_1^2 + r_sq * r^2 + constant.
struct InteriorQuadratic {
    double x1_sq;
    double r_sq;
    double constant;
};
InteriorQuadratic interior_quadratic(const Spheroid& s, double alpha);

double phi0_inside(double x1, double r, const Spheroid& s);
double psi_inside(double x1, double r, const Spheroid& s);
double phi_alpha_inside(double x1, double r, const Spheroid& s, double alpha);

// Exterior evaluations; quadrature tolerance tol applies to the confocal
// sigma-integrals.
double phi0_outside(double x1, double r, const Spheroid& s, double tol = 1e-11);

// (d/dx_1, d/dr) of Phi_0 at an exterior meridian point.
Eigen::Vector2d grad_phi0_outside(double x1, double r, const Spheroid& s, double tol = 1e-11);

// Psi outside via Psi = a^2/(a^2-b^2) Phi_0 + grad Phi_0 . (b^2 x_1, a^2 x') / ((n-2)(a^2-b^2)).
// Rejects nearly-ball spheroids (|t-1| < 1e-6), whose confocal frame degenerates.
double psi_outside(double x1, double r, const Spheroid& s, double tol = 1e-11);

double phi_alpha_outside(double x1, double r, const Spheroid& s, double alpha,
                         double tol = 1e-11);

// Dispatching evaluators for arbitrary points (interior points use the closed
// quadratic, exterior points the confocal integrals).
double phi_alpha(const Eigen::Ref<const Eigen::VectorXd>& x, const Spheroid& s, double alpha);

// Exterior profile in spheroidal coordinates:
//   Phi_alpha + |x|^2/2 = constant_term(z) + rho_sq_term(z) * rho^2,  z >= a/c.
struct ExteriorProfile {
    double constant_term;  // value on the equatorial section rho = 0
    double rho_sq_term;    // quadratic coefficient; value on the axis is the sum
};
ExteriorProfile exterior_profile(double z, const Spheroid& s, double alpha,
                                 double tol = 1e-11);

// Closed forms of ((1/z) d/dz of the profile derivatives)', the sign
// certificates for the exterior Euler-Lagrange inequality:
//   equator: ((1/z) A'(z))',  axis: ((1/z)(A'(z)+B'(z)))'.
double profile_curvature_equator(double z, const Spheroid& s, double alpha);
double profile_curvature_axis(double z, const Spheroid& s, double alpha);

// Euler-Lagrange constant: boundary value constant_term(a/c) of the exterior
// profile, cross-checked against the interior Phi_alpha(0) to 1e-8.  Balls use
// Phi_alpha(0) directly.
double el_constant(const Spheroid& s, double alpha);
double el_constant(const EquilibriumSolution& sol);

}  // namespace spheq
