#include <doctest.h>

#include <cmath>

#include "spheq/quadrature.hpp"
#include "spheq/root_finding.hpp"

using namespace spheq;

TEST_CASE("adaptive GK on smooth integrands") {
    auto r = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12, 1e-12);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity") {
    auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 1e-10);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("half-line integrals") {
    auto r = integrate_half_line([](double s) { return std::exp(-s); }, 0.0, 1e-12, 1e-12);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));

    // int_0^inf ds / ((1+s) sqrt(s)) = pi, singular at both ends
    r = integrate_half_line([](double s) { return 1.0 / ((1.0 + s) * std::sqrt(s)); }, 0.0,
                            1e-12, 1e-12);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(M_PI).epsilon(1e-11));

    // slow sigma^{-3/2} tail from a positive lower limit: int_l^inf = 2/sqrt(l)
    for (double lower : {0.5, 3.0, 40.0}) {
        r = integrate_half_line([](double s) { return std::pow(s, -1.5); }, lower, 1e-12, 1e-12);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(2.0 / std::sqrt(lower)).epsilon(1e-11));
    }
}

TEST_CASE("non-convergence is reported") {
    auto r = integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10, 1e-10, 200);
    CHECK(!r.converged);
    CHECK_THROWS_AS(require_converged(r, "divergent"), QuadratureError);
}

TEST_CASE("brent finds bracketed roots") {
    const double root = brent([](double x) { return x * x - 2.0; }, 0.0, 2.0);
    CHECK(root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(brent([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketError);

    // hard sign change across a steep function
    const double r2 = brent([](double x) { return std::tanh(50.0 * (x - 0.3)); }, -1.0, 1.0);
    CHECK(r2 == doctest::Approx(0.3).epsilon(1e-10));
}
