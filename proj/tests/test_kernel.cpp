#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "spheq/kernel.hpp"
#include "spheq/rng.hpp"

using namespace spheq;
using Eigen::VectorXd;

namespace {
VectorXd unit(int n, int axis) {
    VectorXd e = VectorXd::Zero(n);
    e[axis] = 1.0;
    return e;
}
}  // namespace

TEST_CASE("gamma at half integers") {
    CHECK(gamma_half_integer(1) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_half_integer(2) == doctest::Approx(1.0));
    CHECK(gamma_half_integer(3) == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_half_integer(6) == doctest::Approx(2.0));
    CHECK(gamma_half_integer(7) == doctest::Approx(15.0 * std::sqrt(M_PI) / 8.0).epsilon(1e-14));
    CHECK(gamma_half_integer(8) == doctest::Approx(6.0));
}

TEST_CASE("kernel point values") {
    const EnergyParams p{3, 0.5};
    CHECK(w_alpha(unit(3, 0), p) == doctest::Approx(1.5));
    CHECK(w_alpha(unit(3, 1), p) == doctest::Approx(1.0));
    CHECK(std::isinf(w_alpha(VectorXd::Zero(3), p)));
    CHECK(std::isinf(w_alpha(VectorXd::Zero(4), EnergyParams{4, -0.3})));
}

TEST_CASE("kernel decomposition and comparability") {
    const CounterRng rng(7, 0);
    for (int i = 0; i < 10000; ++i) {
        const int n = 3 + i % 4;
        VectorXd x(n);
        for (int d = 0; d < n; ++d) x[d] = 2.0 * rng.uniform(i, d) - 1.0;
        if (x.norm() < 1e-8) continue;
        const double alpha = -0.95 + 3.0 * rng.uniform(i, 20);
        const EnergyParams p{n, alpha};
        const double w = w_alpha(x, p);
        const double rn = std::pow(x.norm(), n);
        const double decomposed =
            ((1.0 + alpha) * x[0] * x[0] + x.tail(n - 1).squaredNorm()) / rn;
        CHECK(w == doctest::Approx(decomposed).epsilon(1e-12));
        // comparability with the Coulomb kernel
        const double w0 = w_alpha(x, EnergyParams{n, 0.0});
        const double c = std::max(1.0 + alpha, 1.0) * std::max(1.0, 1.0 / (1.0 + alpha));
        CHECK(w <= c * w0 * (1 + 1e-12));
        CHECK(w >= w0 / c * (1 - 1e-12));
    }
}

TEST_CASE("gradient: symmetry, explicit value, finite differences") {
    CHECK(grad_w_alpha(unit(3, 1), EnergyParams{3, 0.7})[0] == doctest::Approx(0.0));
    const VectorXd g = grad_w_alpha(unit(3, 0), EnergyParams{3, 0.0});
    CHECK(g[0] == doctest::Approx(-1.0));
    CHECK(g[1] == doctest::Approx(0.0));
    CHECK_THROWS_AS(grad_w_alpha(VectorXd::Zero(3), EnergyParams{3, 1.0}), std::domain_error);

    const EnergyParams p{4, 1.0};
    const CounterRng rng(11, 0);
    for (int i = 0; i < 50; ++i) {
        VectorXd x(4);
        for (int d = 0; d < 4; ++d) x[d] = 2.0 * rng.uniform(i, d) - 1.0;
        if (x.norm() < 0.3) continue;
        const VectorXd grad = grad_w_alpha(x, p);
        for (int d = 0; d < 4; ++d) {
            VectorXd xp = x, xm = x;
            xp[d] += 1e-6;
            xm[d] -= 1e-6;
            const double fd = (w_alpha(xp, p) - w_alpha(xm, p)) / 2e-6;
            CHECK(grad[d] == doctest::Approx(fd).epsilon(1e-6).scale(std::abs(grad.norm()) + 1));
        }
    }
}

TEST_CASE("homogeneity and symmetry") {
    const CounterRng rng(13, 0);
    for (int i = 0; i < 100; ++i) {
        const int n = 3 + i % 3;
        const EnergyParams p{n, 0.8};
        VectorXd x(n);
        for (int d = 0; d < n; ++d) x[d] = 2.0 * rng.uniform(i, d) - 1.0;
        if (x.norm() < 1e-3) continue;
        const double lam = 0.1 + 5.0 * rng.uniform(i, 30);
        CHECK(w_alpha((lam * x).eval(), p) ==
              doctest::Approx(std::pow(lam, 2.0 - n) * w_alpha(x, p)).epsilon(1e-11));
        CHECK(w_hat_alpha((lam * x).eval(), p) ==
              doctest::Approx(w_hat_alpha(x, p) / (lam * lam)).epsilon(1e-11));
        CHECK(w_alpha((-x).eval(), p) == doctest::Approx(w_alpha(x, p)).epsilon(1e-13));
        // rotation fixing the x1 axis
        Eigen::MatrixXd block = Eigen::MatrixXd::Random(n - 1, n - 1);
        const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(block).householderQ();
        VectorXd y(n);
        y[0] = x[0];
        y.tail(n - 1) = q * x.tail(n - 1);
        CHECK(w_alpha(y, p) == doctest::Approx(w_alpha(x, p)).epsilon(1e-11));
    }
}

TEST_CASE("Fourier transform values and sign structure") {
    CHECK(std::abs(w_hat_alpha(unit(3, 0), EnergyParams{3, 1.0})) <= 1e-15);
    CHECK(std::abs(w_hat_alpha(unit(5, 0), EnergyParams{5, 3.0})) <= 1e-15);
    CHECK(w_hat_alpha(unit(4, 1), EnergyParams{4, 0.0}) == doctest::Approx(1.0).epsilon(1e-13));
    VectorXd xi(3);
    xi << 1.0, 1.0, 0.0;
    CHECK(w_hat_alpha(xi, EnergyParams{3, 1.0}) == doctest::Approx(0.5 / M_PI).epsilon(1e-13));
    CHECK_THROWS_AS(w_hat_alpha(VectorXd::Zero(3), EnergyParams{3, 0.0}), std::domain_error);

    const CounterRng rng(17, 0);
    for (int n : {3, 4, 5}) {
        // positive inside the admissible band
        for (int i = 0; i < 2000; ++i) {
            VectorXd q(n);
            for (int d = 0; d < n; ++d) q[d] = 2.0 * rng.uniform(i, d) - 1.0;
            if (q.norm() < 1e-6) continue;
            const double alpha = -(n - 2 - 1e-9) + (2.0 * (n - 2) - 2e-9) * rng.uniform(i, 25);
            CHECK(w_hat_alpha(q, EnergyParams{n, alpha}) > 0.0);
        }
        // sign changes just outside the band
        CHECK(w_hat_alpha(unit(n, 0), EnergyParams{n, n - 2 + 0.1}) < 0.0);
        CHECK(w_hat_alpha(unit(n, 1), EnergyParams{n, -(n - 2) - 0.1}) < 0.0);
    }
}

TEST_CASE("limiting kernel") {
    CHECK(w_minus_one(unit(3, 0), 3) == doctest::Approx(0.0));
    CHECK(w_minus_one(unit(3, 1), 3) == doctest::Approx(1.0));
    CHECK(std::isinf(w_minus_one(VectorXd::Zero(3), 3)));
    // liminf along the x1 axis is 0, while the origin value is +inf
    CHECK(std::abs(w_minus_one((1e-9 * unit(3, 0)).eval(), 3)) <= 1e-12);

    CHECK(std::abs(w_hat_star(unit(3, 1), 3)) <= 1e-15);
    for (int n : {3, 4, 5}) {
        CHECK(w_hat_star(unit(n, 0), n) ==
              doctest::Approx(fourier_prefactor(n) * (n - 1)).epsilon(1e-13));
    }
    const CounterRng rng(23, 0);
    for (int i = 0; i < 100; ++i) {
        VectorXd q(5);
        for (int d = 0; d < 5; ++d) q[d] = 2.0 * rng.uniform(i, d) - 1.0;
        if (q.norm() < 0.1) continue;
        CHECK(std::abs(w_hat_alpha(q, EnergyParams{5, -1.0 + 1e-8}) - w_hat_star(q, 5)) <= 1e-6);
        // w_minus_one equals the kernel at alpha = -1 away from 0
        CHECK(w_minus_one(q, 5) ==
              doctest::Approx(w_alpha(q, EnergyParams{5, -1.0})).epsilon(1e-12));
    }
}
