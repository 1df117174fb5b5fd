#include <doctest.h>

#include <cmath>

#include "rasp/rng.hpp"
#include "rasp/special_functions.hpp"

#include "oracles.hpp"

using namespace rasp;

TEST_CASE("log_gamma known values") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-12));
    CHECK(log_gamma(8.0) == doctest::Approx(std::log(5040.0)).epsilon(1e-12));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("regularized incomplete beta endpoints and closed form") {
    CHECK(regularized_incomplete_beta(0.0, 2.3, 4.5) == 0.0);
    CHECK(regularized_incomplete_beta(1.0, 2.3, 4.5) == 1.0);
    // I_x(1, b) = 1 - (1-x)^b
    CHECK(regularized_incomplete_beta(0.25, 1.0, 2.0) == doctest::Approx(0.4375).epsilon(1e-12));
    CHECK(regularized_incomplete_beta(0.7, 1.0, 3.0) ==
          doctest::Approx(1.0 - std::pow(0.3, 3)).epsilon(1e-12));
    CHECK_THROWS_AS(regularized_incomplete_beta(-0.1, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 0.0, 1.0), std::domain_error);
}

TEST_CASE("incomplete beta matches quadrature of the integrand") {
    RngStream rng(101);
    for (int i = 0; i < 25; ++i) {
        const double p = rng.uniform(0.3, 6.0);
        const double b = rng.uniform(0.3, 6.0);
        const double x = rng.uniform();
        const double direct = integrate(
            [&](double t) {
                return std::exp((p - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t));
            },
            0.0, x, 1e-12);
        const double norm = std::exp(log_gamma(p) + log_gamma(b) - log_gamma(p + b));
        CHECK(regularized_incomplete_beta(x, p, b) == doctest::Approx(direct / norm).epsilon(1e-9));
    }
}

TEST_CASE("incomplete beta monotonicity and reflection") {
    RngStream rng(7);
    for (int i = 0; i < 2000; ++i) {
        const double p = rng.uniform(0.1, 8.0);
        const double b = rng.uniform(0.1, 8.0);
        double x1 = rng.uniform(), x2 = rng.uniform();
        if (x1 > x2) std::swap(x1, x2);
        CHECK(regularized_incomplete_beta(x1, p, b) <=
              regularized_incomplete_beta(x2, p, b) + 1e-14);
        const double sum = regularized_incomplete_beta(x1, p, b) +
                           regularized_incomplete_beta(1.0 - x1, b, p);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("lower incomplete gamma closed forms and quadrature") {
    // s = 1: gamma(1, t) = 1 - e^{-t}
    for (double t : {0.1, 1.0, 3.7, 20.0})
        CHECK(lower_incomplete_gamma(1.0, t) == doctest::Approx(-std::expm1(-t)).epsilon(1e-12));
    CHECK(lower_incomplete_gamma(3.3, 0.0) == 0.0);
    const double quad =
        integrate([](double u) { return std::exp(-0.5 * std::log(u) - u); }, 1e-14, 1.0, 1e-12);
    CHECK(lower_incomplete_gamma(0.5, 1.0) == doctest::Approx(quad).epsilon(1e-8));
    CHECK_THROWS_AS(lower_incomplete_gamma(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(lower_incomplete_gamma(1.0, -1.0), std::domain_error);
}

TEST_CASE("lower incomplete gamma saturates to Gamma(s)") {
    for (double s = 0.5; s <= 10.0; s += 0.5) {
        const double ratio = lower_incomplete_gamma(s, 700.0) / std::exp(log_gamma(s));
        CHECK(ratio == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("find_root_decreasing root and saturation") {
    CHECK(find_root_decreasing([](double x) { return 1.0 - x; }, 0.0, 2.0, 1e-10) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(find_root_decreasing([](double) { return -1.0; }, 0.0, 2.0, 1e-10) == 0.0);
    CHECK(find_root_decreasing([](double) { return 1.0; }, 0.0, 2.0, 1e-10) == 2.0);
    CHECK_THROWS_AS(find_root_decreasing([](double x) { return -x; }, 0.0, 1.0, 0.0),
                    std::domain_error);
}

TEST_CASE("adaptive quadrature sanity") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-10));
    // Sharply peaked integrand forces subdivision.
    CHECK(integrate([](double x) { return std::exp(-100.0 * (x - 0.7) * (x - 0.7)); }, 0.0, 1.0,
                    1e-12) == doctest::Approx(std::sqrt(M_PI) / 10.0).epsilon(1e-8));
}
