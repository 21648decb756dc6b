#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>

#include "spheq/kernel.hpp"

namespace spheq {

// Gradient descent on the N-particle discretization of the energy:
//   E = (1/N^2) sum_{i != j} W_alpha(x_i - x_j) + (1/N) sum_i |x_i|^2
// Steady states fill a spheroid whose shape matches the continuum minimiser.

struct FlowParams {
    EnergyParams params{3, 0.0};
    int particle_count = 500;
    double initial_step = 0.1;
    std::uint64_t seed = 42;
    long max_iterations = 20000;
    double energy_tolerance = 1e-9;  // relative decrease over the window
    int tolerance_window = 100;
    double step_floor = 1e-14;
};

struct ParticleConfig {
    Eigen::MatrixXd points;  // N x n, one row per particle
    EnergyParams params;
    double step = 0.1;
    std::uint64_t seed = 0;
    long iteration = 0;
};

// seeded uniform samples in the unit ball
ParticleConfig init_particles(const FlowParams& p);

// +inf when two particles coincide
double discrete_energy(const ParticleConfig& cfg);

void discrete_gradient(const ParticleConfig& cfg, Eigen::MatrixXd& grad);

enum class StepStatus { accepted, stagnated };

// One backtracking descent step: the step size halves until the energy does
// not increase and grows by 1.25x after success.  energy holds E(points) on
// entry and exit.
StepStatus flow_step(ParticleConfig& cfg, double& energy);

// Second-moment matching to the uniform spheroid: E[x_i^2] = a_i^2/(n+2).
struct ShapeFit {
    double t_hat = 0.0;
    double b_hat = 0.0;
    Eigen::VectorXd center;
    double residual = 0.0;  // relative spread of the transverse covariances
};
ShapeFit fit_shape(const Eigen::MatrixXd& points);

struct FlowResult {
    ParticleConfig config;
    double energy = 0.0;
    long iterations = 0;
    bool converged = false;
    bool stagnated = false;
    ShapeFit fit;
};

using FlowObserver = std::function<void(const ParticleConfig&, double energy)>;

FlowResult run_flow(const FlowParams& p, const FlowObserver& observer = {});

}  // namespace spheq
