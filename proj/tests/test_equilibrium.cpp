#include <doctest.h>

#include <cmath>
#include <vector>

#include "spheq/equilibrium.hpp"
#include "spheq/special_functions.hpp"

using namespace spheq;

TEST_CASE("coefficient limits at t -> 0 and t -> inf") {
    for (int n : {3, 4, 5}) {
        const auto c0 = coeff_ab(1e-12, n);
        CHECK(c0.a == doctest::Approx(n - 1.0).epsilon(1e-4));
        CHECK(c0.b == doctest::Approx(-(n - 1.0) * (n - 2.0)).epsilon(1e-4));
        const auto cinf = coeff_ab(1e12, n);
        CHECK(cinf.a == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(cinf.b == doctest::Approx(n - 2.0).epsilon(1e-4));
    }
}

TEST_CASE("coefficients at t=1, n=3") {
    const auto c = coeff_ab(1.0, 3);
    CHECK(c.a == doctest::Approx(8.0 / 15.0).epsilon(1e-10));
    CHECK(std::abs(c.b) <= 1e-10);
}

TEST_CASE("F(1,alpha) closed form") {
    for (int n : {3, 4, 5}) {
        for (double alpha : {-0.9, 0.0, 1.0, static_cast<double>(n - 2)}) {
            CHECK(stationarity_f(1.0, alpha, n) ==
                  doctest::Approx(4.0 * (n - 1) * alpha / (n * (n + 2.0))).epsilon(1e-8));
        }
    }
    CHECK(stationarity_f(1.0, 0.0, 5) == doctest::Approx(0.0));
}

TEST_CASE("F limit at t -> 0 for alpha = n-2") {
    // the limit equals -((n-2)^3/2) * int_0^1 (1-s)^{n/2-2} s^{-1/2} ds = -8 for n=4
    CHECK(stationarity_f(1e-12, 2.0, 4) == doctest::Approx(-8.0).epsilon(1e-3));
}

TEST_CASE("solve: alpha = 0 short circuit") {
    for (int n = 3; n <= 6; ++n) {
        CHECK(solve_aspect_ratio(0.0, n) == 1.0);
        const auto sol = solve_equilibrium(0.0, n);
        CHECK(sol.t == 1.0);
        CHECK(sol.b == doctest::Approx(std::pow(n - 2.0, 1.0 / n)).epsilon(1e-12));
        CHECK(sol.a == sol.b);
    }
}

TEST_CASE("solve: golden aspect ratios") {
    // frozen from a pre-build bisection oracle on F (closed-form H)
    struct Golden {
        double alpha;
        int n;
        double t;
        double b;
    };
    const std::vector<Golden> goldens = {
        {1.0, 3, 0.13518242308762762, 1.2845700914468816},
        {-0.5, 3, 2.092403937640427, 0.8002233638646417},
        {0.5, 3, 0.49699502877645085, 1.149197929142298},
        {2.0, 4, 0.3153415615735089, 1.4317344928120483},
        {-0.5, 4, 1.2995246237914762, 1.1080411280156515},
        {1.0, 4, 0.6084799562182812, 1.320083636886661},
        {-0.9, 3, 6.406255129745539, 0.5120395588155664},
        {3.0, 5, 0.4524258116511179, 1.4418312922044196},
    };
    for (const auto& g : goldens) {
        const double t = solve_aspect_ratio(g.alpha, g.n);
        CHECK(t == doctest::Approx(g.t).epsilon(1e-8));
        CHECK(std::abs(stationarity_f(t, g.alpha, g.n)) <= 1e-10);
        if (g.alpha > 0) CHECK(t < 1.0);
        if (g.alpha < 0) CHECK(t > 1.0);
        CHECK(semi_axis_b(t, g.alpha, g.n) == doctest::Approx(g.b).epsilon(1e-8));
    }
}

TEST_CASE("solved spheroids satisfy both original coefficient equations") {
    for (const auto& [alpha, n] : std::vector<std::pair<double, int>>{
             {1.0, 3}, {-0.5, 3}, {2.0, 4}, {-0.9, 5}, {0.3, 6}}) {
        const auto sol = solve_equilibrium(alpha, n);
        const double t = sol.t;
        const double bn = std::pow(sol.b, n);
        const double hv = h(t, n);
        const double hp = h_prime(t, n);
        const double eq1 = 0.25 * n / bn * ((2 * alpha - (n - 2)) * hv + 2 * alpha * t * hp);
        const double eq2 = 0.25 * n / ((n - 1) * bn) *
                           (-2 * (n - 2 + alpha) / std::sqrt(t) + (n - 2) * hv -
                            2 * alpha * t * hp);
        CHECK(eq1 == doctest::Approx(-0.5).epsilon(1e-8));
        CHECK(eq2 == doctest::Approx(-0.5).epsilon(1e-8));
        // lower bounds on b^n
        if (alpha > 0) CHECK(bn > (n - 2 - alpha) / std::sqrt(t));
        if (alpha < 0) CHECK(bn > (n - 2 + alpha) / std::sqrt(t));
        // invariants of the solution record
        CHECK(sol.a == doctest::Approx(sol.b * std::sqrt(sol.t)).epsilon(1e-14));
        CHECK(sol.residual <= 1e-10);
    }
}

TEST_CASE("root uniqueness probe: one sign change on a log grid") {
    for (double alpha : {1.0, -0.5}) {
        int changes = 0;
        double prev = stationarity_f(1e-6, alpha, 3);
        double bracket_lo = 0, bracket_hi = 0;
        for (int i = 1; i < 1000; ++i) {
            const double t = std::pow(10.0, -6.0 + 12.0 * i / 999.0);
            const double cur = stationarity_f(t, alpha, 3);
            if ((prev < 0) != (cur < 0)) {
                ++changes;
                bracket_lo = std::pow(10.0, -6.0 + 12.0 * (i - 1) / 999.0);
                bracket_hi = t;
            }
            prev = cur;
        }
        CHECK(changes == 1);
        const double t_root = solve_aspect_ratio(alpha, 3);
        CHECK(t_root >= bracket_lo);
        CHECK(t_root <= bracket_hi);
    }
}

TEST_CASE("t(alpha) is strictly decreasing") {
    for (int n : {3, 4}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 12; ++i) {
            const double alpha = -0.9 + (n - 2 + 0.9) * i / 11.0;
            const double t = solve_aspect_ratio(alpha, n);
            CHECK(t < prev);
            prev = t;
        }
    }
}

TEST_CASE("limiting equilibrium") {
    // frozen goldens from the pre-build bisection oracle
    const auto l3 = limiting_equilibrium(3);
    CHECK(l3.t_star == doctest::Approx(18.028366365910827).epsilon(1e-8));
    CHECK(l3.b_star == doctest::Approx(0.3201675631629388).epsilon(1e-8));
    CHECK(l3.t_star > 1.0);
    CHECK(l3.residual <= 1e-10);
    const auto l4 = limiting_equilibrium(4);
    CHECK(l4.t_star == doctest::Approx(1.7708851457365562).epsilon(1e-8));
    CHECK(l4.b_star == doctest::Approx(1.0069563758851026).epsilon(1e-8));

    // b* formula given (t*, H(t*))
    const double bs = std::pow(l3.t_star, -1.0 / 6.0) *
                      std::pow(0.0 + std::sqrt(l3.t_star) * h(l3.t_star, 3), 1.0 / 3.0);
    CHECK(l3.b_star == doctest::Approx(bs).epsilon(1e-12));

    // continuity of t(alpha) into the limit; the n=3 approach is slow
    // (measured |t(-1+1e-3) - t*| ~ 0.46), so the 1e-2 band is checked at the
    // calibrated offsets per dimension
    CHECK(std::abs(solve_aspect_ratio(-1.0 + 1e-6, 3) - l3.t_star) <= 1e-2);
    CHECK(std::abs(solve_aspect_ratio(-1.0 + 1e-4, 3) - l3.t_star) <= 1e-1);
    CHECK(std::abs(solve_aspect_ratio(-1.0 + 1e-3, 4) - l4.t_star) <= 1e-2);
}

TEST_CASE("alpha range is enforced for solving") {
    CHECK_THROWS_AS(solve_aspect_ratio(-1.0, 3), std::domain_error);
    CHECK_THROWS_AS(solve_aspect_ratio(1.5, 3), std::domain_error);
    CHECK_THROWS_AS(solve_aspect_ratio(0.5, 2), std::domain_error);
    CHECK_NOTHROW(solve_aspect_ratio(1.0, 3));  // alpha = n-2 is included
}
