#include "spheq/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "spheq/fft.hpp"
#include "spheq/gauss_legendre.hpp"
#include "spheq/kernel.hpp"
#include "spheq/parallel.hpp"
#include "spheq/potentials.hpp"
#include "spheq/rng.hpp"

namespace spheq {

namespace {

constexpr int kPrimes[16] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

// quasi-random points in the unit ball: Halton cube with rejection for small
// n, counter-based pseudo-random sampling once rejection gets too wasteful
void interior_ball_points(int n, int count, std::uint64_t seed, Eigen::MatrixXd& out) {
    out.resize(count, n);
    if (n <= 8) {
        int accepted = 0;
        std::uint64_t idx = 1;
        Eigen::VectorXd u(n);
        while (accepted < count) {
            for (int d = 0; d < n; ++d) u[d] = 2.0 * halton(idx, kPrimes[d]) - 1.0;
            ++idx;
            if (u.squaredNorm() <= 1.0) out.row(accepted++) = u;
        }
    } else {
        CounterRng rng(seed, 7);
        Eigen::VectorXd u(n);
        for (int i = 0; i < count; ++i) {
            rng.ball_point(i, u);
            out.row(i) = u;
        }
    }
}

struct RunningStats {
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;
    void add(double v) {
        ++count;
        const double d = v - mean;
        mean += d / count;
        m2 += d * (v - mean);
    }
    void merge(const RunningStats& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double delta = o.mean - mean;
        const std::size_t tot = count + o.count;
        mean += delta * static_cast<double>(o.count) / tot;
        m2 += o.m2 + delta * delta * static_cast<double>(count) * o.count / tot;
        count = tot;
    }
    double stderror() const { return count < 2 ? 0.0 : std::sqrt(m2 / (count - 1) / count); }
};

constexpr int kStatChunks = 64;

// one importance sample of the interaction potential Phi_alpha(y) at y drawn
// uniformly from the spheroid; shared between total_energy and the paired
// difference estimator
double interaction_sample(const Spheroid& s, double alpha, const Eigen::VectorXd& ball_u,
                          const Eigen::VectorXd& dir, double radial_u, Eigen::VectorXd& scratch) {
    const int n = s.n;
    const double cover = 2.0 * std::max(s.a, s.b);
    scratch = ball_u;
    scratch[0] *= s.a;
    scratch.tail(n - 1) *= s.b;
    scratch += (cover * std::sqrt(radial_u)) * dir;
    if (!s.contains(scratch)) return 0.0;
    const double shape = 1.0 + alpha * dir[0] * dir[0];
    const double sphere_area = n * unit_ball_volume(n);
    return shape * 0.5 * sphere_area * cover * cover / s.volume();
}

}  // namespace

ELReport verify_el1(const EquilibriumSolution& sol, const ElGrid& grid) {
    const int n = sol.params.n;
    const Spheroid s(sol.a, sol.b, n);
    const auto q = interior_quadratic(s, sol.params.alpha);
    ELReport rep;
    rep.params = sol.params;
    rep.c_alpha = sol.c_alpha;
    Eigen::MatrixXd pts;
    interior_ball_points(n, grid.interior_points, grid.seed, pts);
    double max_dev = 0.0;
    double sum = 0.0;
    for (int i = 0; i < pts.rows(); ++i) {
        const double x1 = sol.a * pts(i, 0);
        const double r2 = sol.b * sol.b * pts.row(i).tail(n - 1).squaredNorm();
        const double value = (q.x1_sq + 0.5) * x1 * x1 + (q.r_sq + 0.5) * r2 + q.constant;
        sum += value;
        max_dev = std::max(max_dev, std::abs(value - sol.c_alpha));
    }
    rep.interior_max_abs_dev = max_dev;
    rep.interior_max_rel_dev = max_dev / std::abs(sol.c_alpha);
    rep.interior_constant_avg = sum / pts.rows();
    rep.interior_points = static_cast<int>(pts.rows());
    return rep;
}

ELReport verify_el2(const EquilibriumSolution& sol, const ElGrid& grid) {
    const int n = sol.params.n;
    const double alpha = sol.params.alpha;
    const Spheroid s(sol.a, sol.b, n);
    ELReport rep;
    rep.params = sol.params;
    rep.c_alpha = sol.c_alpha;
    rep.z_points = grid.z_points;

    double min_slack = std::numeric_limits<double>::infinity();
    double min_curv = std::numeric_limits<double>::infinity();
    if (s.nearly_ball()) {
        if (alpha != 0.0)
            throw std::domain_error("verify_el2: near-ball spheroid with alpha != 0");
        // radial profile d^{2-n} + d^2/2; its stationarity at d = b is EL-2
        const double d_max = grid.z_max_factor * sol.b;
        rep.z_max = d_max;
        const double ratio = std::pow(d_max / sol.b, 1.0 / (grid.z_points - 1));
        double d = sol.b;
        for (int i = 0; i < grid.z_points; ++i, d *= ratio) {
            const double slack = std::pow(d, 2.0 - n) + 0.5 * d * d - sol.c_alpha;
            min_slack = std::min(min_slack, slack);
            const double curv = (n - 2) * (n - 1) * std::pow(d, -static_cast<double>(n)) + 1.0;
            min_curv = std::min(min_curv, curv);
        }
    } else {
        const double z0 = sol.a / s.focal();
        const double z_max = grid.z_max_factor * z0;
        rep.z_max = z_max;
        const double ratio = std::pow(z_max / z0, 1.0 / (grid.z_points - 1));
        double z = z0;
        for (int i = 0; i < grid.z_points; ++i, z *= ratio) {
            const auto prof = exterior_profile(z, s, alpha);
            min_slack = std::min(min_slack, prof.constant_term - sol.c_alpha);
            min_slack =
                std::min(min_slack, prof.constant_term + prof.rho_sq_term - sol.c_alpha);
            min_curv = std::min(min_curv, profile_curvature_equator(z, s, alpha));
            min_curv = std::min(min_curv, profile_curvature_axis(z, s, alpha));
        }
    }
    rep.exterior_min_slack = min_slack;
    rep.derivative_min = min_curv;
    return rep;
}

ELReport verify_equilibrium(const EquilibriumSolution& sol, const ElGrid& grid) {
    ELReport rep = verify_el1(sol, grid);
    const ELReport ext = verify_el2(sol, grid);
    rep.exterior_min_slack = ext.exterior_min_slack;
    rep.derivative_min = ext.derivative_min;
    rep.z_points = ext.z_points;
    rep.z_max = ext.z_max;
    return rep;
}

double second_moment(const Spheroid& s) {
    return (s.a * s.a + (s.n - 1) * s.b * s.b) / (s.n + 2);
}

EnergyEstimate total_energy(const Spheroid& s, double alpha, std::size_t samples,
                            std::uint64_t seed, std::uint64_t stream) {
    const int n = s.n;
    const CounterRng rng(seed, stream + 17);
    std::vector<RunningStats> parts(kStatChunks);
    parallel_chunks(samples, kStatChunks, [&](int chunk, std::size_t begin, std::size_t end) {
        Eigen::VectorXd ball_u(n), dir(n), scratch(n);
        RunningStats& local = parts[chunk];
        for (std::size_t j = begin; j < end; ++j) {
            rng.ball_point(j, ball_u, 0);
            rng.sphere_direction(j, dir, 40);
            const double radial_u = (static_cast<double>(j) + rng.uniform(j, 90)) / samples;
            local.add(interaction_sample(s, alpha, ball_u, dir, radial_u, scratch));
        }
    });
    RunningStats stats;
    for (const auto& part : parts) stats.merge(part);
    EnergyEstimate e;
    e.interaction = stats.mean;
    e.interaction_error = stats.stderror();
    e.confinement = second_moment(s);
    e.value = e.interaction + e.confinement;
    e.error = e.interaction_error;
    return e;
}

EnergyEstimate energy_difference(const Spheroid& s1, const Spheroid& s2, double alpha,
                                 std::size_t samples, std::uint64_t seed, std::uint64_t stream) {
    if (s1.n != s2.n) throw std::invalid_argument("energy_difference: dimension mismatch");
    const int n = s1.n;
    const CounterRng rng(seed, stream + 17);
    std::vector<RunningStats> parts(kStatChunks);
    parallel_chunks(samples, kStatChunks, [&](int chunk, std::size_t begin, std::size_t end) {
        Eigen::VectorXd ball_u(n), dir(n), scratch(n);
        RunningStats& local = parts[chunk];
        for (std::size_t j = begin; j < end; ++j) {
            rng.ball_point(j, ball_u, 0);
            rng.sphere_direction(j, dir, 40);
            const double radial_u = (static_cast<double>(j) + rng.uniform(j, 90)) / samples;
            const double a = interaction_sample(s1, alpha, ball_u, dir, radial_u, scratch);
            const double b = interaction_sample(s2, alpha, ball_u, dir, radial_u, scratch);
            local.add(a - b);
        }
    });
    RunningStats stats;
    for (const auto& part : parts) stats.merge(part);
    EnergyEstimate e;
    e.interaction = stats.mean;
    e.interaction_error = stats.stderror();
    e.confinement = second_moment(s1) - second_moment(s2);
    e.value = e.interaction + e.confinement;
    e.error = e.interaction_error;
    return e;
}

ConstantRelationReport constant_relations(const EquilibriumSolution& sol, std::size_t samples,
                                          std::uint64_t seed) {
    const Spheroid s(sol.a, sol.b, sol.params.n);
    const EnergyEstimate e = total_energy(s, sol.params.alpha, samples, seed);
    ConstantRelationReport rep;
    rep.c_alpha = sol.c_alpha;
    rep.energy = e.value;
    rep.energy_error = e.error;
    rep.second_moment = e.confinement;
    rep.el1_integrated_residual = e.value - (sol.c_alpha + 0.5 * rep.second_moment);
    rep.doubled_relation_residual = sol.c_alpha - (2.0 * e.value - 0.5 * rep.second_moment);
    return rep;
}

// ---------------- discrete Parseval ----------------

namespace {

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

// in-place 3D FFT of a P^3 cube
void fft3(std::vector<std::complex<double>>& a, std::size_t p, bool inverse) {
    std::vector<std::complex<double>> line(p);
    // axis 2: contiguous
    for (std::size_t i = 0; i < p * p; ++i) fft_inplace(a.data() + i * p, p, inverse);
    // axis 1: stride p
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = 0; k < p; ++k) {
            for (std::size_t j = 0; j < p; ++j) line[j] = a[(i * p + j) * p + k];
            fft_inplace(line.data(), p, inverse);
            for (std::size_t j = 0; j < p; ++j) a[(i * p + j) * p + k] = line[j];
        }
    // axis 0: stride p^2
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t k = 0; k < p; ++k) {
            for (std::size_t i = 0; i < p; ++i) line[i] = a[(i * p + j) * p + k];
            fft_inplace(line.data(), p, inverse);
            for (std::size_t i = 0; i < p; ++i) a[(i * p + j) * p + k] = line[i];
        }
}

// exact lattice pair sum via zero-padded FFT convolution
double real_side_sum(const LatticeDensity& d, const EnergyParams& p) {
    const int m = d.m;
    const std::size_t pad = next_pow2(2 * static_cast<std::size_t>(m) - 1);
    std::vector<std::complex<double>> nu(pad * pad * pad), ker(pad * pad * pad);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                nu[(static_cast<std::size_t>(i) * pad + j) * pad + k] =
                    d.values[(static_cast<std::size_t>(i) * m + j) * m + k];
    Eigen::Vector3d x;
    for (int di = -(m - 1); di <= m - 1; ++di)
        for (int dj = -(m - 1); dj <= m - 1; ++dj)
            for (int dk = -(m - 1); dk <= m - 1; ++dk) {
                if (di == 0 && dj == 0 && dk == 0) continue;  // i != j pairs only
                x << di * d.h, dj * d.h, dk * d.h;
                const std::size_t ii = static_cast<std::size_t>((di + pad) % pad);
                const std::size_t jj = static_cast<std::size_t>((dj + pad) % pad);
                const std::size_t kk = static_cast<std::size_t>((dk + pad) % pad);
                ker[(ii * pad + jj) * pad + kk] = w_alpha(x, p);
            }
    fft3(nu, pad, false);
    fft3(ker, pad, false);
    for (std::size_t i = 0; i < nu.size(); ++i) ker[i] *= nu[i];
    fft3(ker, pad, true);
    const double scale = 1.0 / static_cast<double>(pad * pad * pad);
    double sum = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                sum += d.values[(static_cast<std::size_t>(i) * m + j) * m + k] *
                       (ker[(static_cast<std::size_t>(i) * pad + j) * pad + k].real() * scale);
    const double h3 = d.h * d.h * d.h;
    return sum * h3 * h3;
}

// The frequency-side integrand W-hat |nu-hat|^2 carries an |xi|^{-2}
// singularity holding a sizeable share of the energy near xi = 0, which a
// plain lattice sum resolves poorly.  Subtract the Gaussian surrogate
// g(xi) = mass^2 exp(-(4 pi^2/mass) xi^T S xi), which matches |nu-hat|^2 to
// O(xi^4); the subtracted sum is regular at 0 and int W-hat g has a smooth
// closed angular form:
//   int W-hat g = pref * mass^2 * (sqrt(pi)/2) *
//                 int_{S^2} ((n-2-a) w1^2 + (n-2+a)(1-w1^2)) / sqrt(q(w)) dw.
double w_hat_gaussian_integral(const EnergyParams& p, double mass,
                               const Eigen::Matrix3d& second_moment) {
    const Eigen::Matrix3d q = (4.0 * M_PI * M_PI / mass) * second_moment;
    const int m = 64;
    const auto [nodes, weights] = gauss_legendre(m);
    const int mphi = 2 * m;
    const double dphi = 2.0 * M_PI / mphi;
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        const double ct = nodes[i];
        const double st = std::sqrt(1.0 - ct * ct);
        double ring = 0.0;
        for (int k = 0; k < mphi; ++k) {
            const double phi = (k + 0.5) * dphi;
            Eigen::Vector3d w(ct, st * std::cos(phi), st * std::sin(phi));
            const double qw = w.dot(q * w);
            const double angular =
                (p.n - 2 - p.alpha) * w[0] * w[0] + (p.n - 2 + p.alpha) * (1.0 - w[0] * w[0]);
            ring += angular / std::sqrt(qw);
        }
        total += weights[i] * ring * dphi;
    }
    return fourier_prefactor(p.n) * mass * mass * 0.5 * std::sqrt(M_PI) * total;
}

}  // namespace

ParsevalResult parseval_check(const LatticeDensity& density, const EnergyParams& params,
                              double box_factor) {
    if (density.n != 3 || params.n != 3)
        throw std::invalid_argument("parseval_check: implemented for n = 3 grids");
    if (density.m <= 0 || density.values.size() != static_cast<std::size_t>(density.m) *
                                                       density.m * density.m)
        throw std::invalid_argument("parseval_check: bad lattice");

    ParsevalResult out;
    out.m = density.m;
    out.real_side = real_side_sum(density, params);

    // frequency lattice of the box_factor-times-enlarged box
    const int m = density.m;
    const std::size_t big = next_pow2(static_cast<std::size_t>(std::lround(box_factor * m)));
    const double box = static_cast<double>(big) * density.h;
    out.box = box;
    const double delta = 1.0 / box;
    const double h3 = density.h * density.h * density.h;

    // density mass and second moments for the singular surrogate
    double mass = 0.0;
    Eigen::Matrix3d smom = Eigen::Matrix3d::Zero();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const double v = density.values[(static_cast<std::size_t>(i) * m + j) * m + k];
                if (v == 0.0) continue;
                const Eigen::Vector3d x((i - 0.5 * (m - 1)) * density.h,
                                        (j - 0.5 * (m - 1)) * density.h,
                                        (k - 0.5 * (m - 1)) * density.h);
                mass += v;
                smom += v * x * x.transpose();
            }
    mass *= h3;
    smom *= h3;
    const bool subtract = std::abs(mass) > 1e-12;
    const double gauss_q = subtract ? 4.0 * M_PI * M_PI / mass : 0.0;

    // nu-hat on the big lattice, slab-streamed: transform axis 0 first, then a
    // padded 2D FFT per k0-slab, accumulating the weighted sum on the fly
    std::vector<std::complex<double>> axis0(big * m * m);
    {
        std::vector<std::complex<double>> line(big);
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                std::fill(line.begin(), line.end(), std::complex<double>(0));
                for (int i = 0; i < m; ++i)
                    line[i] = density.values[(static_cast<std::size_t>(i) * m + j) * m + k];
                fft_inplace(line.data(), big, false);
                for (std::size_t k0 = 0; k0 < big; ++k0)
                    axis0[(k0 * m + static_cast<std::size_t>(j)) * m + k] = line[k0];
            }
    }

    double fourier = 0.0;
    std::vector<std::complex<double>> slab(big * big);
    std::vector<std::complex<double>> line(big);
    for (std::size_t k0 = 0; k0 < big; ++k0) {
        std::fill(slab.begin(), slab.end(), std::complex<double>(0));
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                slab[static_cast<std::size_t>(j) * big + k] =
                    axis0[(k0 * m + static_cast<std::size_t>(j)) * m + k];
        for (int j = 0; j < m; ++j) fft_inplace(slab.data() + static_cast<std::size_t>(j) * big, big, false);
        for (std::size_t k2 = 0; k2 < big; ++k2) {
            for (std::size_t j = 0; j < big; ++j) line[j] = slab[j * big + k2];
            fft_inplace(line.data(), big, false);
            for (std::size_t j = 0; j < big; ++j) slab[j * big + k2] = line[j];
        }
        const int s0 = (k0 < big / 2) ? static_cast<int>(k0) : static_cast<int>(k0) - static_cast<int>(big);
        for (std::size_t k1 = 0; k1 < big; ++k1) {
            const int s1 = (k1 < big / 2) ? static_cast<int>(k1) : static_cast<int>(k1) - static_cast<int>(big);
            for (std::size_t k2 = 0; k2 < big; ++k2) {
                const int s2 = (k2 < big / 2) ? static_cast<int>(k2) : static_cast<int>(k2) - static_cast<int>(big);
                if (s0 == 0 && s1 == 0 && s2 == 0) continue;  // O(xi^2) integrand vanishes there
                const Eigen::Vector3d xi(s0 * delta, s1 * delta, s2 * delta);
                double amp = std::norm(slab[k1 * big + k2]) * h3 * h3;
                if (subtract) amp -= mass * mass * std::exp(-gauss_q * xi.dot(smom * xi));
                fourier += w_hat_alpha(xi, params) * amp;
            }
        }
    }
    out.fourier_side = fourier * delta * delta * delta;
    if (subtract) out.fourier_side += w_hat_gaussian_integral(params, mass, smom);
    return out;
}

LatticeDensity bump_density(int m, double radius) {
    LatticeDensity d;
    d.n = 3;
    d.m = m;
    d.h = 2.0 * radius / m;
    d.values.assign(static_cast<std::size_t>(m) * m * m, 0.0);
    double mass = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const double x = (i - 0.5 * (m - 1)) * d.h;
                const double y = (j - 0.5 * (m - 1)) * d.h;
                const double z = (k - 0.5 * (m - 1)) * d.h;
                const double q = (x * x + y * y + z * z) / (radius * radius);
                if (q < 1.0 - 1e-12) {
                    const double v = std::exp(-1.0 / (1.0 - q));
                    d.values[(static_cast<std::size_t>(i) * m + j) * m + k] = v;
                    mass += v;
                }
            }
    const double h3 = d.h * d.h * d.h;
    for (double& v : d.values) v /= mass * h3;
    return d;
}

namespace {

void add_bump(LatticeDensity& d, const Eigen::Vector3d& center, double radius, double weight) {
    const int m = d.m;
    double mass = 0.0;
    std::vector<double> tmp(d.values.size(), 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const Eigen::Vector3d x((i - 0.5 * (m - 1)) * d.h, (j - 0.5 * (m - 1)) * d.h,
                                        (k - 0.5 * (m - 1)) * d.h);
                const double q = (x - center).squaredNorm() / (radius * radius);
                if (q < 1.0 - 1e-12) {
                    const double v = std::exp(-1.0 / (1.0 - q));
                    tmp[(static_cast<std::size_t>(i) * m + j) * m + k] = v;
                    mass += v;
                }
            }
    const double h3 = d.h * d.h * d.h;
    for (std::size_t idx = 0; idx < tmp.size(); ++idx)
        d.values[idx] += weight * tmp[idx] / (mass * h3);
}

}  // namespace

LatticeDensity two_bump_signed(int m, double radius, double offset) {
    LatticeDensity d;
    d.n = 3;
    d.m = m;
    d.h = 2.0 * radius / m;
    d.values.assign(static_cast<std::size_t>(m) * m * m, 0.0);
    const double r_bump = std::max(radius - offset, 0.2 * radius);
    add_bump(d, Eigen::Vector3d(offset, 0, 0), r_bump, +1.0);
    add_bump(d, Eigen::Vector3d(-offset, 0, 0), r_bump, -1.0);
    return d;
}

LatticeDensity axial_signed_density(int m, double x1_halfwidth, double transverse_radius) {
    LatticeDensity d;
    d.n = 3;
    d.m = m;
    const double radius = std::max(transverse_radius, 4.0 * x1_halfwidth);
    d.h = 2.0 * radius / m;
    d.values.assign(static_cast<std::size_t>(m) * m * m, 0.0);
    const double sep = 1.5 * x1_halfwidth;
    double l1 = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const double x = (i - 0.5 * (m - 1)) * d.h;
                const double y = (j - 0.5 * (m - 1)) * d.h;
                const double z = (k - 0.5 * (m - 1)) * d.h;
                auto bump1d = [&](double u) {
                    const double q = u * u / (x1_halfwidth * x1_halfwidth);
                    return q < 1.0 - 1e-12 ? std::exp(-1.0 / (1.0 - q)) : 0.0;
                };
                const double qt = (y * y + z * z) / (transverse_radius * transverse_radius);
                const double trans = qt < 1.0 - 1e-12 ? std::exp(-1.0 / (1.0 - qt)) : 0.0;
                const double v = (bump1d(x - sep) - bump1d(x + sep)) * trans;
                d.values[(static_cast<std::size_t>(i) * m + j) * m + k] = v;
                l1 += std::abs(v);
            }
    const double h3 = d.h * d.h * d.h;
    for (double& v : d.values) v /= l1 * h3;
    return d;
}

}  // namespace spheq
