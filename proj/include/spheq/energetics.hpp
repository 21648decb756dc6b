#pragma once

#include <cstdint>
#include <vector>

#include "spheq/equilibrium.hpp"
#include "spheq/spheroid.hpp"

namespace spheq {

// Grids for the Euler-Lagrange checks.
struct ElGrid {
    int interior_points = 2000;    // quasi-random interior samples for EL-1
    int z_points = 400;            // z-grid for the exterior profile
    double z_max_factor = 10.0;    // grid extends to z_max_factor * (a/c)
    std::uint64_t seed = 12345;    // only used by Monte-Carlo style helpers
};

struct ELReport {
    EnergyParams params{};
    double c_alpha = 0.0;
    // EL-1 (interior): max |Phi_alpha + |x|^2/2 - C_alpha| over the grid
    double interior_max_abs_dev = -1.0;
    double interior_max_rel_dev = -1.0;
    double interior_constant_avg = 0.0;  // grid average of Phi_alpha + |x|^2/2
    // EL-2 (exterior): min over the z-grid of profile - C_alpha at rho in {0,1}
    double exterior_min_slack = 0.0;
    // min over the grid of the two curvature certificates
    double derivative_min = 0.0;
    int interior_points = 0;
    int z_points = 0;
    double z_max = 0.0;
};

ELReport verify_el1(const EquilibriumSolution& sol, const ElGrid& grid = {});
ELReport verify_el2(const EquilibriumSolution& sol, const ElGrid& grid = {});
ELReport verify_equilibrium(const EquilibriumSolution& sol, const ElGrid& grid = {});

// int |x|^2 dmu for the normalised uniform measure: (a^2 + (n-1) b^2)/(n+2).
double second_moment(const Spheroid& s);

struct EnergyEstimate {
    double value;
    double error;
    double interaction;
    double interaction_error;
    double confinement;
};

// I_alpha(mu) = (interaction double integral, Monte Carlo) + second moment.
EnergyEstimate total_energy(const Spheroid& s, double alpha, std::size_t samples = 1'000'000,
                            std::uint64_t seed = 42, std::uint64_t stream = 0);

// I_alpha(s1) - I_alpha(s2) with common random numbers; error is the standard
// error of the paired difference, much tighter than differencing two
// independent estimates.
EnergyEstimate energy_difference(const Spheroid& s1, const Spheroid& s2, double alpha,
                                 std::size_t samples = 1'000'000, std::uint64_t seed = 42,
                                 std::uint64_t stream = 0);

// The two candidate identities tying C_alpha to the energy (reported, not
// asserted): integrating EL-1 gives I = C + m2/2; the alternative relation
// C = 2I - m2/2 is also evaluated.
struct ConstantRelationReport {
    double c_alpha;
    double energy;
    double energy_error;
    double second_moment;
    double el1_integrated_residual;   // I - (C + m2/2)
    double doubled_relation_residual;  // C - (2I - m2/2)
};
ConstantRelationReport constant_relations(const EquilibriumSolution& sol,
                                          std::size_t samples = 2'000'000,
                                          std::uint64_t seed = 42);

// ---- discrete Parseval cross-check (n = 3) ----

// Density on a uniform m^3 grid of cell width h, cell centers at
// x = (idx - (m-1)/2) h; values need not be nonnegative but must sum to a
// finite mass (1 for probability densities, 0 for signed test densities).
struct LatticeDensity {
    int n = 3;
    int m = 0;
    double h = 0.0;
    std::vector<double> values;  // m^3, index = (i*m + j)*m + k
};

// C_c^infinity bump exp(-1/(1-|x/R|^2)) restricted to |x| < R, mass 1.
LatticeDensity bump_density(int m, double radius);
// difference of two mass-1 bumps centred at +/- offset * e_1 (total mass 0)
LatticeDensity two_bump_signed(int m, double radius, double offset);
// signed slab-like density: narrow two-bump profile along x_1 times a wide
// transverse bump, concentrating nu-hat along the xi_1 axis
LatticeDensity axial_signed_density(int m, double x1_halfwidth, double transverse_radius);

struct ParsevalResult {
    double real_side;     // lattice pair sum of W_alpha (FFT-accelerated, exact)
    double fourier_side;  // frequency-lattice sum of W-hat |nu-hat|^2
    int m;
    double box;           // period of the frequency lattice
};
ParsevalResult parseval_check(const LatticeDensity& density, const EnergyParams& params,
                              double box_factor = 4.0);

}  // namespace spheq
