#pragma once

// Test-only oracles: quadrature and simulation references kept independent
// of the library code paths they check.

#include <cmath>
#include <functional>
#include <vector>

#include "rasp/special_functions.hpp"
#include "rasp/types.hpp"

namespace oracles {

// Inverse-gamma pdf.
inline double ig_pdf(double t, double shape, double scale) {
    if (t <= 0.0) return 0.0;
    return std::exp(shape * std::log(scale) - std::lgamma(shape) -
                    (shape + 1.0) * std::log(t) - scale / t);
}

// E_prior[f(theta)] for theta ~ IG(shape, scale) by quadrature on a wide box.
inline double ig_expectation(const rasp::InverseGammaPrior& prior,
                             const std::function<double(double)>& f,
                             double tol = 1e-10) {
    // Map theta = u/(1-u) to cover (0, inf).
    return rasp::integrate(
        [&](double u) {
            const double t = u / (1.0 - u);
            const double jac = 1.0 / ((1.0 - u) * (1.0 - u));
            return ig_pdf(t, prior.shape, prior.scale) * f(t) * jac;
        },
        1e-12, 1.0 - 1e-12, tol);
}

// Exponential expected shortfall int_0^L F(x) dx at a fixed theta.
inline double exp_shortfall(double theta, double L) {
    return rasp::integrate([&](double x) { return -std::expm1(-x / theta); }, 0.0, L, 1e-12);
}

// Expected rebate at fixed theta by direct quadrature of q(x) f(x).
inline double exp_rebate_quadrature(double theta, const rasp::WarrantyPolicy& policy) {
    const double full = policy.cs + policy.cw;
    auto pdf = [&](double x) { return std::exp(-x / theta) / theta; };
    double acc = full * (1.0 - std::exp(-policy.w1 / theta));  // full-refund window
    if (policy.w2 > policy.w1)
        acc += rasp::integrate(
            [&](double x) {
                return full * (policy.w2 - x) / (policy.w2 - policy.w1) * pdf(x);
            },
            policy.w1, policy.w2, 1e-12);
    return acc;
}

// Mean and standard error of a sample.
struct MeanSe {
    double mean = 0.0, se = 0.0;
};
inline MeanSe mean_se(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    const double m = s / xs.size();
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    return {m, std::sqrt(v / xs.size() / xs.size())};
}

// One-sample Kolmogorov-Smirnov statistic against a cdf.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double F = cdf(xs[i]);
        d = std::max(d, std::fabs(F - (i + 1) / n));
        d = std::max(d, std::fabs(F - i / n));
    }
    return d;
}

} // namespace oracles
