#include <doctest.h>

#include <cmath>

#include "spheq/quadrature.hpp"
#include "spheq/rng.hpp"
#include "spheq/special_functions.hpp"

using namespace spheq;

namespace {

// independent n=3 oracle from the closed antiderivative of the branch integral
double h3_oracle(double t) {
    if (t < 1.0)
        return 2.0 / (std::sqrt(t) * (1.0 - t)) -
               2.0 * std::acos(std::sqrt(t)) / std::pow(1.0 - t, 1.5);
    return -2.0 / (std::sqrt(t) * (t - 1.0)) +
           2.0 * std::acosh(std::sqrt(t)) / std::pow(t - 1.0, 1.5);
}

double h3_prime_oracle(double t) {
    const double lead = (4.0 * t - 1.0) / (std::pow(t, 1.5) * (1.0 - t) * (1.0 - t));
    if (t < 1.0) return lead - 3.0 * std::acos(std::sqrt(t)) / std::pow(1.0 - t, 2.5);
    return lead - 3.0 * std::acosh(std::sqrt(t)) / std::pow(t - 1.0, 2.5);
}

}  // namespace

TEST_CASE("H at t=1 matches 2/n and H' matches -3/(n+2)") {
    for (int n = 3; n <= 6; ++n) {
        CHECK(h(1.0, n) == doctest::Approx(2.0 / n).epsilon(1e-10));
        CHECK(h_prime(1.0, n) == doctest::Approx(-3.0 / (n + 2)).epsilon(1e-10));
    }
    CHECK(h_prime(1.0, 5) == doctest::Approx(-3.0 / 7.0).epsilon(1e-10));
}

TEST_CASE("n=3 closed-form oracle values") {
    // golden: H(4,3) = -1/3 + 2 acosh(2)/3^{3/2}
    const double golden = -1.0 / 3.0 + 2.0 * std::acosh(2.0) / std::pow(3.0, 1.5);
    CHECK(golden == doctest::Approx(0.17356399753396418).epsilon(1e-12));
    CHECK(h(4.0, 3) == doctest::Approx(golden).epsilon(1e-11));
    CHECK(h(0.25, 3) == doctest::Approx(h3_oracle(0.25)).epsilon(1e-11));
    CHECK(h(0.25, 3) == doctest::Approx(2.1088011302502787).epsilon(1e-11));

    // golden: H'(0.25, 3), frozen from the quadrature of the (t+s)^{-5/2}
    // integral scaled by -3/2; equals -pi / 0.75^{5/2}
    CHECK(h_prime(0.25, 3) == doctest::Approx(-6.449064406166108).epsilon(1e-11));
    CHECK(h_prime(0.25, 3) == doctest::Approx(h3_prime_oracle(0.25)).epsilon(1e-11));
    const double quad_oracle =
        -1.5 * require_converged(
                   integrate_half_line(
                       [](double s) { return std::pow(0.25 + s, -2.5) / (1.0 + s); }, 0.0,
                       1e-12, 1e-12),
                   "derivative integral oracle");
    CHECK(h_prime(0.25, 3) == doctest::Approx(quad_oracle).epsilon(1e-10));
}

TEST_CASE("evaluation methods agree") {
    for (int n : {3, 4, 5, 7, 12, 16}) {
        for (double t : {0.05, 0.5, 0.9, 0.995, 1.005, 1.2, 3.0, 50.0}) {
            const double quad = h_eval(t, n, HMethod::quadrature).value;
            const double quad_p = h_prime_eval(t, n, HMethod::quadrature).value;
            // the closed form cancels ~|1-t|^{-(n/2+1)} near t=1; only compare
            // where it retains at least ~11 digits
            if (std::pow(std::abs(1.0 - t), 0.5 * n + 1.0) > 1e-4) {
                CHECK(quad == doctest::Approx(h_eval(t, n, HMethod::closed_form).value)
                                  .epsilon(1e-10));
                CHECK(quad_p == doctest::Approx(h_prime_eval(t, n, HMethod::closed_form).value)
                                    .epsilon(1e-10));
            }
            if (std::abs(t - 1.0) < 0.6) {
                CHECK(h_eval(t, n, HMethod::series_near_1).value ==
                      doctest::Approx(quad).epsilon(1e-10));
                CHECK(h_prime_eval(t, n, HMethod::series_near_1).value ==
                      doctest::Approx(quad_p).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("companion integral identities on the grid") {
    for (int n : {3, 4, 5, 6}) {
        for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
            const double hv = h(t, n);
            const double hp = h_prime(t, n);
            const auto aux = aux_integrals(t, n);
            CHECK(std::abs(aux.j5 + (2.0 / 3.0) * hp) <= 1e-10);
            CHECK(aux.jb == doctest::Approx(2.0 / ((n - 1) * std::sqrt(t)) - hv / (n - 1))
                                .epsilon(1e-10));
            CHECK(aux.jc == doctest::Approx(2.0 / ((n - 1) * std::pow(t, 1.5)) +
                                            2.0 * hp / (n - 1))
                                .epsilon(1e-10));
            // ODE relation between H and H'
            CHECK(std::abs(-n * hv + 2.0 * (1.0 - t) * hp + 2.0 * std::pow(t, -1.5)) <= 1e-9);
        }
    }
}

TEST_CASE("aux integrals at t=1, n=3") {
    const auto aux = aux_integrals(1.0, 3);
    CHECK(aux.j5 == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(aux.jb == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(aux.jc == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("t -> 0 limits") {
    for (int n : {3, 4, 5, 6}) {
        for (double t : {1e-4, 1e-6}) {
            CHECK(std::abs(std::sqrt(t) * h(t, n) - 2.0) <= 10.0 * std::sqrt(t));
            CHECK(std::abs(std::pow(t, 1.5) * h_prime(t, n) + 1.0) <= 10.0 * std::sqrt(t));
        }
    }
}

TEST_CASE("properties: positivity, bounds, monotonicity of sqrt(t) H") {
    const CounterRng rng(99, 0);
    for (int i = 0; i < 200; ++i) {
        const double t = std::pow(10.0, -5.0 + 10.0 * rng.uniform(i));
        const int n = 3 + static_cast<int>(rng.uniform(i, 1) * 13.999);
        const double hv = h(t, n);
        const double hp = h_prime(t, n);
        CHECK(hv > 0.0);
        CHECK(hp < 0.0);
        const double sth = std::sqrt(t) * hv;
        CHECK(sth > 0.0);
        CHECK(sth < 2.0);
    }
}

TEST_CASE("finite differences match h_prime") {
    for (int n : {3, 5}) {
        for (double t : {0.3, 0.8, 1.5, 3.0}) {
            const double delta = 1e-5;
            const double fd = (h(t + delta, n) - h(t - delta, n)) / (2.0 * delta);
            CHECK(fd == doctest::Approx(h_prime(t, n)).epsilon(1e-6));
        }
    }
}

TEST_CASE("interior constant integral matches quadrature") {
    for (int n : {3, 4, 6}) {
        for (double t : {0.3, 1.0, 2.5}) {
            auto f = [t, n](double s) {
                return std::pow(t + s, -0.5) * std::pow(1.0 + s, -0.5 * (n - 1));
            };
            const double direct =
                require_converged(integrate_half_line(f, 0.0, 1e-11, 1e-11), "M(t)");
            CHECK(interior_constant_integral(t, n) == doctest::Approx(direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(h(0.0, 3), std::domain_error);
    CHECK_THROWS_AS(h(-1.0, 3), std::domain_error);
    CHECK_THROWS_AS(h(1.0, 2), std::domain_error);
    CHECK_THROWS_AS(h_prime(1.0, 17), std::domain_error);
}
