#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "factlab/special_functions.hpp"
#include "oracles.hpp"

using namespace factlab;

TEST_CASE("lambert w basics") {
    CHECK(lambert_w(0.0) == 0.0);
    CHECK(lambert_w(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lambert_w(1.0) == doctest::Approx(oracles::lambert_w_bisect(1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(lambert_w(-0.1), std::domain_error);
}

TEST_CASE("lambert w residual over a log-spaced grid") {
    for (double x = 1e-6; x <= 1.0001e3; x *= 1.7) {
        const double w = lambert_w(x);
        REQUIRE(std::fabs(w * std::exp(w) - x) / x <= 1e-13);
    }
}

TEST_CASE("exponential integral on negative arguments") {
    CHECK(expint_ei(-1.0) ==
          doctest::Approx(static_cast<double>(oracles::ei_series_oracle(-1.0L)))
              .epsilon(1e-13));
    CHECK(std::fabs(expint_ei(-50.0)) < 1e-20);
    CHECK(expint_ei(-0.3675) == doctest::Approx(-gamma0(0.3675)).epsilon(1e-14));
    CHECK_THROWS_AS(expint_ei(0.0), std::domain_error);
    CHECK_THROWS_AS(expint_ei(1.0), std::domain_error);
}

TEST_CASE("series/continued-fraction seam at |x| = 6 is continuous") {
    const double eps = 1e-10;
    CHECK(std::fabs(expint_ei(-(6.0 - eps)) - expint_ei(-(6.0 + eps))) < 1e-12);
}

TEST_CASE("series branch against the oracle across its range") {
    for (double t = 0.1; t < 6.0; t += 0.3)
        REQUIRE(expint_ei(-t) ==
                doctest::Approx(static_cast<double>(oracles::ei_series_oracle(-(long double)t)))
                    .epsilon(1e-12));
}

TEST_CASE("gamma0 examples") {
    CHECK(gamma0(1.0) ==
          doctest::Approx(-static_cast<double>(oracles::ei_series_oracle(-1.0L)))
              .epsilon(1e-13));
    CHECK(gamma0(0.5) == doctest::Approx(-expint_ei(-0.5)).epsilon(1e-14));
    CHECK(gamma0(10.0) < std::exp(-10.0) / 10.0 * 1.2);
    CHECK_THROWS_AS(gamma0(0.0), std::domain_error);
}

TEST_CASE("gamma0 + Ei(-t) = 0 on a grid") {
    for (double t = 0.05; t <= 20.0; t += 0.37)
        REQUIRE(std::fabs(gamma0(t) + expint_ei(-t)) <= 1e-13);
}

TEST_CASE("zeta at analytic points") {
    const double pi = 3.14159265358979323846;
    CHECK(std::fabs(zeta(2.0) - pi * pi / 6.0) <= 1e-12);
    CHECK(std::fabs(zeta(4.0) - pi * pi * pi * pi / 90.0) <= 1e-12);
    CHECK_THROWS_AS(zeta(1.0), std::domain_error);
    CHECK_THROWS_AS(zeta(0.5), std::domain_error);
}

TEST_CASE("zeta derivative against Richardson finite differences") {
    for (const double s : {1.5, 1.7286472389981836, 2.0, 3.0}) {
        const double fd = oracles::derivative_richardson([](double v) { return zeta(v); }, s, 1e-4);
        REQUIRE(std::fabs(zeta_prime(s) - fd) <= 1e-8);
    }
}

TEST_CASE("rho solves zeta = 2") {
    const double rho = solve_rho();
    CHECK(rho > 1.725);
    CHECK(rho < 1.735);
    CHECK(std::fabs(zeta(rho) - 2.0) <= 1e-12);
    CHECK(-1.0 / (rho * zeta_prime(rho)) > 0.0);  // zeta' < 0 on (1, inf)
}

TEST_CASE("s_func values") {
    CHECK(std::fabs(s_func(1.0)) < 1e-15);
    CHECK(s_func(2.0) == doctest::Approx(2.0 / 3.14159265358979323846).epsilon(1e-14));
    CHECK(s_func(1e6) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(s_func(0.0), std::domain_error);
}

TEST_CASE("h_func inverts t e^t Gamma(0,t)") {
    for (double c = 0.02; c < 1.0; c += 0.07) {
        const double t = h_func(c);
        REQUIRE(std::fabs(h_func_forward(t) - c) <= 1e-12);
    }
    for (double t = 0.05; t <= 5.0; t += 0.11)
        REQUIRE(std::fabs(h_func(h_func_forward(t)) - t) <= 1e-10);
    CHECK(h_func(1e-4) < 1e-2);  // H -> 0 as c -> 0
    CHECK_THROWS_AS(h_func(0.0), std::domain_error);
    CHECK_THROWS_AS(h_func(1.0), std::domain_error);
}

TEST_CASE("stationarity of the ordered-coprime exponent") {
    const ConstantsReport r = constants_report();
    // w + log w + log log 2 = -1 (defining identity of w)
    CHECK(std::fabs(r.w + std::log(r.w) + std::log(std::log(2.0)) + 1.0) <= 1e-12);

    const double c = -r.w * std::exp(r.w) * expint_ei(-r.w);
    CHECK(std::fabs(h_func(c) - r.w) <= 1e-8);
    const double h = h_func(c);
    CHECK(std::fabs(h + std::log(h) + 1.0 + std::log(std::log(2.0))) <= 1e-10);
}

TEST_CASE("h differential identity 1/H' = c/H + c - 1") {
    for (double c = 0.15; c <= 0.86; c += 0.1) {
        const double eps = 1e-6;
        const double hd = (h_func(c + eps) - h_func(c - eps)) / (2 * eps);
        const double rhs = c / h_func(c) + c - 1.0;
        REQUIRE(std::fabs(1.0 / hd - rhs) <= 1e-6 * std::max(1.0, std::fabs(rhs)));
    }
}

TEST_CASE("constants report values and residuals") {
    const ConstantsReport r = constants_report();
    // three significant figures
    CHECK(std::fabs(r.c_f - 2.12) <= 0.005);
    CHECK(std::fabs(r.c_g - 0.771) <= 0.0005);
    CHECK(std::fabs(r.rho - 1.73) <= 0.005);
    for (const auto& item : r.items()) {
        INFO(item.name);
        CHECK(item.residual < 1e-10);
        CHECK(std::isfinite(item.value));
        CHECK(item.value > 0.0);  // all six constants are positive
    }
    // the two closed forms of c_G agree
    const double alt = r.w * (1.0 - std::exp(r.w) * expint_ei(-r.w));
    CHECK(std::fabs(r.c_g - alt) <= 1e-12);
}
