#include "spheq/particle_flow.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spheq/parallel.hpp"
#include "spheq/rng.hpp"

namespace spheq {

ParticleConfig init_particles(const FlowParams& p) {
    check_dimension(p.params.n);
    if (p.particle_count < 1) throw std::invalid_argument("particle_count must be positive");
    ParticleConfig cfg;
    cfg.params = p.params;
    cfg.step = p.initial_step;
    cfg.seed = p.seed;
    cfg.iteration = 0;
    cfg.points.resize(p.particle_count, p.params.n);
    const CounterRng rng(p.seed, 1);
    Eigen::VectorXd x(p.params.n);
    for (int i = 0; i < p.particle_count; ++i) {
        rng.ball_point(i, x);
        cfg.points.row(i) = x;
    }
    return cfg;
}

double discrete_energy(const ParticleConfig& cfg) {
    const long n_pts = cfg.points.rows();
    const int dim = static_cast<int>(cfg.points.cols());
    constexpr int chunks = 64;
    std::vector<double> partial(chunks, 0.0);
    parallel_chunks(static_cast<std::size_t>(n_pts), chunks,
                    [&](int chunk, std::size_t begin, std::size_t end) {
                        Eigen::VectorXd diff(dim);
                        double acc = 0.0;
                        for (std::size_t i = begin; i < end; ++i) {
                            for (long j = static_cast<long>(i) + 1; j < n_pts; ++j) {
                                diff = cfg.points.row(i) - cfg.points.row(j);
                                acc += w_alpha(diff, cfg.params);
                            }
                        }
                        partial[chunk] = acc;
                    });
    double interaction = 0.0;
    for (double v : partial) interaction += v;  // fixed order, thread-count independent
    if (std::isinf(interaction)) return interaction;
    const double confinement = cfg.points.squaredNorm() / n_pts;
    return 2.0 * interaction / (static_cast<double>(n_pts) * n_pts) + confinement;
}

void discrete_gradient(const ParticleConfig& cfg, Eigen::MatrixXd& grad) {
    const long n_pts = cfg.points.rows();
    const int dim = static_cast<int>(cfg.points.cols());
    grad.resize(n_pts, dim);
    grad.setZero();
    const double pair_scale = 2.0 / (static_cast<double>(n_pts) * n_pts);
    parallel_chunks(static_cast<std::size_t>(n_pts), 64,
                    [&](int, std::size_t begin, std::size_t end) {
                        Eigen::VectorXd diff(dim), acc(dim);
                        for (std::size_t i = begin; i < end; ++i) {
                            acc.setZero();
                            for (long j = 0; j < n_pts; ++j) {
                                if (j == static_cast<long>(i)) continue;
                                diff = cfg.points.row(i) - cfg.points.row(j);
                                accumulate_grad_w_alpha(diff, cfg.params, pair_scale, acc);
                            }
                            grad.row(i) = acc;
                            grad.row(i) += (2.0 / n_pts) * cfg.points.row(i);
                        }
                    });
}

StepStatus flow_step(ParticleConfig& cfg, double& energy) {
    static thread_local Eigen::MatrixXd grad, trial;
    discrete_gradient(cfg, grad);
    ParticleConfig probe;
    probe.params = cfg.params;
    while (cfg.step > 1e-300) {
        trial = cfg.points - cfg.step * grad;
        probe.points.swap(trial);
        const double trial_energy = discrete_energy(probe);
        probe.points.swap(trial);
        if (trial_energy <= energy) {
            cfg.points.swap(trial);
            energy = trial_energy;
            cfg.step *= 1.25;
            ++cfg.iteration;
            return StepStatus::accepted;
        }
        cfg.step *= 0.5;
    }
    return StepStatus::stagnated;
}

ShapeFit fit_shape(const Eigen::MatrixXd& points) {
    const long n_pts = points.rows();
    const int dim = static_cast<int>(points.cols());
    if (n_pts < dim + 1) throw std::invalid_argument("fit_shape: need at least n+1 points");
    ShapeFit fit;
    fit.center = points.colwise().mean();
    Eigen::VectorXd cov(dim);
    for (int d = 0; d < dim; ++d) {
        const auto col = points.col(d).array() - fit.center[d];
        cov[d] = col.square().mean();
    }
    const double transverse = cov.tail(dim - 1).mean();
    if (!(transverse > 0.0)) throw std::domain_error("fit_shape: degenerate covariance");
    fit.t_hat = cov[0] / transverse;
    fit.b_hat = std::sqrt((dim + 2) * transverse);
    fit.residual = (cov.tail(dim - 1).array() - transverse).abs().maxCoeff() / transverse;
    return fit;
}

FlowResult run_flow(const FlowParams& p, const FlowObserver& observer) {
    FlowResult result;
    result.config = init_particles(p);
    result.energy = discrete_energy(result.config);
    std::vector<double> window;
    window.reserve(p.tolerance_window + 1);
    for (long it = 0; it < p.max_iterations; ++it) {
        const StepStatus status = flow_step(result.config, result.energy);
        if (status == StepStatus::stagnated || result.config.step < p.step_floor) {
            result.stagnated = true;
            break;
        }
        if (observer) observer(result.config, result.energy);
        window.push_back(result.energy);
        if (static_cast<int>(window.size()) > p.tolerance_window) {
            const double past = window[window.size() - 1 - p.tolerance_window];
            const double decrease = past - result.energy;
            if (decrease < p.energy_tolerance * std::max(std::abs(result.energy), 1.0)) {
                result.converged = true;
                break;
            }
            if (window.size() > 4096) window.erase(window.begin(), window.end() - p.tolerance_window - 1);
        }
    }
    result.iterations = result.config.iteration;
    if (result.config.points.rows() > result.config.points.cols())
        result.fit = fit_shape(result.config.points);
    return result;
}

}  // namespace spheq
