#include "spheq/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "spheq/gauss_legendre.hpp"
#include "spheq/parallel.hpp"
#include "spheq/kernel.hpp"
#include "spheq/rng.hpp"

namespace spheq {

namespace {

// surface area of the unit sphere S^{n-1}
double sphere_area(int n) { return n * unit_ball_volume(n); }

struct PairStats {
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;
    void add(double v) {
        ++count;
        const double d = v - mean;
        mean += d / count;
        m2 += d * (v - mean);
    }
    void merge(const PairStats& o) {
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
    double stderror() const {
        if (count < 2) return 0.0;
        return std::sqrt(m2 / (count - 1) / count);
    }
};

constexpr int kStatChunks = 64;  // fixed, so results do not depend on threads

// Interior points: importance-sample z = y - x with radial density ~ |z|^{2-n}
// on the ball of radius D covering the spheroid.  The weighted integrand
// (1 + alpha (z_1/|z|)^2) 1_Omega(x+z) is bounded, so the variance is finite
// in every dimension.
OracleResult mc_interior(const Eigen::Ref<const Eigen::VectorXd>& x, const Spheroid& s,
                         double alpha, const McBudget& budget) {
    const int n = s.n;
    const double cover = x.norm() + std::max(s.a, s.b);
    const CounterRng rng(budget.seed, budget.stream);
    const std::size_t pairs = std::max<std::size_t>(budget.samples / 2, 2);
    std::vector<PairStats> parts(kStatChunks);
    parallel_chunks(pairs, kStatChunks, [&](int chunk, std::size_t begin, std::size_t end) {
        Eigen::VectorXd dir(n), y(n);
        PairStats& local = parts[chunk];
        for (std::size_t j = begin; j < end; ++j) {
            rng.sphere_direction(j, dir);
            const double u = (static_cast<double>(j) + rng.uniform(j, 100)) / pairs;
            const double radius = cover * std::sqrt(u);
            const double shape = 1.0 + alpha * dir[0] * dir[0];
            double contrib = 0.0;
            y = x + radius * dir;
            if (s.contains(y)) contrib += shape;
            y = x - radius * dir;
            if (s.contains(y)) contrib += shape;
            local.add(0.5 * contrib);
        }
    });
    PairStats stats;
    for (const auto& part : parts) stats.merge(part);
    const double scale = 0.5 * sphere_area(n) * cover * cover / s.volume();
    return {stats.mean * scale, stats.stderror() * scale};
}

// Exterior points: plain uniform sampling over the spheroid with antithetic
// pairs and a stratified radius.
OracleResult mc_exterior(const Eigen::Ref<const Eigen::VectorXd>& x, const Spheroid& s,
                         double alpha, const McBudget& budget) {
    const int n = s.n;
    const EnergyParams p{n, alpha};
    const CounterRng rng(budget.seed, budget.stream);
    const std::size_t pairs = std::max<std::size_t>(budget.samples / 2, 2);
    std::vector<PairStats> parts(kStatChunks);
    parallel_chunks(pairs, kStatChunks, [&](int chunk, std::size_t begin, std::size_t end) {
        Eigen::VectorXd dir(n), y(n);
        PairStats& local = parts[chunk];
        for (std::size_t j = begin; j < end; ++j) {
            rng.sphere_direction(j, dir);
            const double u = (static_cast<double>(j) + rng.uniform(j, 100)) / pairs;
            const double radius = std::pow(u, 1.0 / n);
            dir *= radius;
            dir[0] *= s.a;
            dir.tail(n - 1) *= s.b;
            y = x - dir;
            double contrib = w_alpha(y, p);
            y = x + dir;
            contrib += w_alpha(y, p);
            local.add(0.5 * contrib);
        }
    });
    PairStats stats;
    for (const auto& part : parts) stats.merge(part);
    return {stats.mean, stats.stderror()};
}

// ray length from an interior point to the boundary along direction w
double ray_to_boundary(const Eigen::Vector3d& x, const Eigen::Vector3d& w, const Spheroid& s) {
    const Eigen::Vector3d minv(1.0 / (s.a * s.a), 1.0 / (s.b * s.b), 1.0 / (s.b * s.b));
    const double qa = w.cwiseProduct(w).dot(minv);
    const double qb = x.cwiseProduct(w).dot(minv);
    const double qc = x.cwiseProduct(x).dot(minv) - 1.0;
    return (-qb + std::sqrt(std::max(qb * qb - qa * qc, 0.0))) / qa;
}

// n=3 interior: the radial integral of W_alpha r^2 is exact, leaving a smooth
// integral over directions: value = (1/2|Omega|) int_{S^2} (1+alpha w_1^2) R(w)^2 dw.
double quad_interior_level(const Eigen::Vector3d& x, const Spheroid& s, double alpha, int m) {
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
            const Eigen::Vector3d w(ct, st * std::cos(phi), st * std::sin(phi));
            const double radius = ray_to_boundary(x, w, s);
            ring += (1.0 + alpha * w[0] * w[0]) * radius * radius;
        }
        total += weights[i] * ring * dphi;
    }
    return 0.5 * total / s.volume();
}

// n=3 exterior: smooth integrand over the spheroid, mapped from the unit ball
// in spherical coordinates.
double quad_exterior_level(const Eigen::Vector3d& x, const Spheroid& s, double alpha, int m) {
    const EnergyParams p{3, alpha};
    const auto [nodes, weights] = gauss_legendre(m);
    const int mphi = 2 * m;
    const double dphi = 2.0 * M_PI / mphi;
    double total = 0.0;
    for (int ir = 0; ir < m; ++ir) {
        const double rad = 0.5 * (nodes[ir] + 1.0);
        const double wr = 0.5 * weights[ir] * rad * rad;
        for (int i = 0; i < m; ++i) {
            const double ct = nodes[i];
            const double st = std::sqrt(1.0 - ct * ct);
            double ring = 0.0;
            for (int k = 0; k < mphi; ++k) {
                const double phi = (k + 0.5) * dphi;
                const Eigen::Vector3d y(s.a * rad * ct, s.b * rad * st * std::cos(phi),
                                        s.b * rad * st * std::sin(phi));
                ring += w_alpha((x - y).eval(), p);
            }
            total += wr * weights[i] * ring * dphi;
        }
    }
    return total / (4.0 * M_PI / 3.0);
}

}  // namespace

OracleResult convolution_oracle_mc(const Eigen::Ref<const Eigen::VectorXd>& x, const Spheroid& s,
                                   double alpha, const McBudget& budget) {
    if (x.size() != s.n) throw std::invalid_argument("convolution_oracle: wrong point dimension");
    if (s.contains(x)) return mc_interior(x, s, alpha, budget);
    return mc_exterior(x, s, alpha, budget);
}

OracleResult convolution_oracle_quadrature(const Eigen::Ref<const Eigen::VectorXd>& x,
                                           const Spheroid& s, double alpha, int level) {
    if (s.n != 3)
        throw std::invalid_argument("convolution_oracle_quadrature: only n = 3 is supported");
    if (x.size() != 3) throw std::invalid_argument("convolution_oracle: wrong point dimension");
    const Eigen::Vector3d x3 = x;
    double coarse, fine;
    if (s.contains(x)) {
        coarse = quad_interior_level(x3, s, alpha, level);
        fine = quad_interior_level(x3, s, alpha, 2 * level);
    } else {
        coarse = quad_exterior_level(x3, s, alpha, level);
        fine = quad_exterior_level(x3, s, alpha, 2 * level);
    }
    return {fine, std::abs(fine - coarse)};
}

}  // namespace spheq
