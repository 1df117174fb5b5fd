#pragma once

#include <cmath>
#include <stdexcept>

#include "rasp/special_functions.hpp"

namespace rasp {

// Exponential lifetime with mean theta: F(x) = 1 - exp(-x/theta).
struct ExponentialModel {
    double theta = 1.0;

    double cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-x / theta); }
    double pdf(double x) const { return x < 0.0 ? 0.0 : std::exp(-x / theta) / theta; }
    double quantile(double u) const { return -theta * std::log1p(-u); }

    // E[X^q] = theta^q Gamma(q+1).
    double moment(double q) const {
        return std::pow(theta, q) * std::exp(log_gamma(q + 1.0));
    }
};

// Weibull lifetime: F(x) = 1 - exp(-lambda x^alpha).
struct WeibullModel {
    double alpha = 1.0;
    double lambda = 1.0;

    double cdf(double x) const {
        return x <= 0.0 ? 0.0 : -std::expm1(-lambda * std::pow(x, alpha));
    }
    double pdf(double x) const {
        if (x <= 0.0) return 0.0;
        const double xa = std::pow(x, alpha);
        return alpha * lambda * xa / x * std::exp(-lambda * xa);
    }
    double quantile(double u) const {
        return std::pow(-std::log1p(-u) / lambda, 1.0 / alpha);
    }

    // E[X^q] = lambda^{-q/alpha} Gamma(q/alpha + 1).
    double moment(double q) const {
        return std::pow(lambda, -q / alpha) * std::exp(log_gamma(q / alpha + 1.0));
    }
};

} // namespace rasp
