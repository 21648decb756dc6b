#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>

namespace spheq {

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter, lane), so Monte-Carlo results are reproducible for a
// given seed regardless of how samples are distributed over threads.
struct CounterRng {
    std::uint64_t key;

    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key(mix(mix(seed + 0x9E3779B97F4A7C15ull) ^ (stream + 0xD1B54A32D192ED03ull))) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t raw(std::uint64_t counter, std::uint64_t lane = 0) const {
        return mix(key ^ mix(counter * 0xA24BAED4963EE407ull + lane));
    }

    // uniform in (0,1)
    double uniform(std::uint64_t counter, std::uint64_t lane = 0) const {
        return (static_cast<double>(raw(counter, lane) >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal(std::uint64_t counter, std::uint64_t lane = 0) const {
        const double u1 = uniform(counter, 2 * lane);
        const double u2 = uniform(counter, 2 * lane + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // uniform direction on the unit sphere in R^n (lanes [lane0, lane0+2n))
    void sphere_direction(std::uint64_t counter, Eigen::Ref<Eigen::VectorXd> dir,
                          std::uint64_t lane0 = 0) const {
        const int n = static_cast<int>(dir.size());
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            dir[i] = normal(counter, lane0 + i);
            norm2 += dir[i] * dir[i];
        }
        dir /= std::sqrt(norm2);
    }

    // uniform point in the unit ball in R^n
    void ball_point(std::uint64_t counter, Eigen::Ref<Eigen::VectorXd> x,
                    std::uint64_t lane0 = 0) const {
        sphere_direction(counter, x, lane0);
        const int n = static_cast<int>(x.size());
        const double r = std::pow(uniform(counter, lane0 + 2 * n), 1.0 / n);
        x *= r;
    }
};

}  // namespace spheq
