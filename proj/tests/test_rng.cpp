#include <doctest.h>

#include <cmath>
#include <vector>

#include "rasp/rng.hpp"
#include "rasp/special_functions.hpp"

#include "oracles.hpp"

using namespace rasp;

TEST_CASE("identical (seed, stream) reproduces the identical sequence") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    RngStream c(42, 8);
    bool all_equal = true;
    RngStream a2(42, 7);
    for (int i = 0; i < 64; ++i) all_equal &= (a2.next_u64() == c.next_u64());
    CHECK_FALSE(all_equal);
}

TEST_CASE("substreams are reproducible and distinct") {
    RngStream base(9, 0);
    RngStream s1 = base.substream(3), s2 = base.substream(3), s3 = base.substream(4);
    CHECK(s1.next_u64() == s2.next_u64());
    CHECK(s1.next_u64() != s3.next_u64());
}

TEST_CASE("gamma sampler first two moments") {
    RngStream rng(123);
    const int n = 1000000;
    const double shape = 2.0, rate = 4.0;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.gamma(shape, rate);
        s += x;
        s2 += x * x;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    const double true_mean = shape / rate, true_var = shape / (rate * rate);
    // se(mean) = sd/sqrt(n); se(var) ~ var*sqrt(2/(n-1)) plus kurtosis term
    const double se_mean = std::sqrt(true_var / n);
    const double kurt_excess = 6.0 / shape;
    const double se_var = true_var * std::sqrt((2.0 + kurt_excess) / n);
    CHECK(std::fabs(mean - true_mean) < 4.0 * se_mean);
    CHECK(std::fabs(var - true_var) < 4.0 * se_var);
}

TEST_CASE("gamma sampler shape below one") {
    RngStream rng(321);
    const int n = 1000000;
    const double shape = 0.6, rate = 2.0;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.gamma(shape, rate);
        s += x;
        s2 += x * x;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::fabs(mean - 0.3) < 4.0 * std::sqrt(0.15 / n));
    CHECK(std::fabs(var - 0.15) < 4.0 * 0.15 * std::sqrt((2.0 + 10.0) / n));
}

TEST_CASE("inverse gamma mean and determinism") {
    RngStream rng(55);
    const int n = 1000000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += rng.inverse_gamma(3.0, 6.0);
    // mean = scale/(shape-1) = 3, var = scale^2/((shape-1)^2 (shape-2)) = 9
    CHECK(std::fabs(s / n - 3.0) < 3.0 * std::sqrt(9.0 / n));

    RngStream r1(99, 2), r2(99, 2);
    CHECK(r1.inverse_gamma(2.5, 4.0) == r2.inverse_gamma(2.5, 4.0));
    CHECK(r1.gamma(1.5, 1.0) == r2.gamma(1.5, 1.0));
}

TEST_CASE("reciprocal of inverse gamma draws is gamma distributed (KS)") {
    RngStream rng(77);
    const int n = 100000;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = 1.0 / rng.inverse_gamma(3.0, 6.0);
    const double d = oracles::ks_statistic(
        xs, [](double x) { return regularized_lower_gamma(3.0, 6.0 * x); });
    // alpha = 0.01 critical value ~ 1.628/sqrt(n)
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("uniform and weibull samplers stay in range") {
    RngStream rng(11);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        const double w = rng.weibull(1.5, 2.0);
        CHECK(w > 0.0);
    }
    CHECK_THROWS_AS(rng.gamma(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(rng.inverse_gamma(1.0, 0.0), std::domain_error);
}
