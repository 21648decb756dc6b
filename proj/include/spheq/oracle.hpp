#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "spheq/spheroid.hpp"

namespace spheq {

// Brute-force estimate of (W_alpha * mu)(x) for the normalised uniform measure
// mu on a spheroid, with an error estimate.  Two independent backends:
//  - Monte Carlo (any n): uniform sampling over the spheroid for exterior
//    points; for interior points the integrable |x-y|^{2-n} singularity is
//    importance-sampled with a radial |z|^{2-n} proposal, which keeps the
//    estimator bounded in every dimension.
//  - Tensor quadrature (n = 3 only): exact radial integration around interior
//    points, spheroid-adapted spherical Gauss-Legendre grids outside.

struct OracleResult {
    double value;
    double error;  // one standard error (MC) or refinement difference (quadrature)
};

struct McBudget {
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 42;
    std::uint64_t stream = 0;
};

OracleResult convolution_oracle_mc(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const Spheroid& s, double alpha, const McBudget& budget = {});

OracleResult convolution_oracle_quadrature(const Eigen::Ref<const Eigen::VectorXd>& x,
                                           const Spheroid& s, double alpha, int level = 48);

}  // namespace spheq
