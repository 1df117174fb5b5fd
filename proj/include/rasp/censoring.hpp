#pragma once

#include <cmath>
#include <vector>

#include "rasp/rng.hpp"
#include "rasp/special_functions.hpp"
#include "rasp/types.hpp"

namespace rasp {

// One observed or simulated Type-I hybrid-censored data set. The test stops
// at the r-th failure or at T0, whichever comes first, so eta = x_(r) when
// d = r and eta = T0 otherwise. v is the exponential-model sufficient
// statistic (total time on test), 0 < v <= n*T0.
struct HcsSample {
    Design design;
    std::vector<double> failures;  // nondecreasing, all <= eta
    int d = 0;
    double eta = 0.0;
    double v = 0.0;

    void validate() const;
};

// Total time on test. d=0 -> n*T0; d<r -> sum x_(i) + (n-d)*T0;
// d=r -> sum x_(i) + (n-r)*x_(r).
double v_statistic(const std::vector<double>& failures, int d, const Design& design);

// Builds an HcsSample from raw failure times (computes d, eta, v, validates).
HcsSample make_hcs_sample(const Design& design, std::vector<double> failures);

// Progressive order-statistic generator: U_(i) = 1 - [1-U_(i-1)](1-U_i)^{1/(n-i+1)},
// x_(i) = quantile(U_(i)); stops past r failures or past T0.
template <typename Model>
HcsSample generate_hcs_sample(const Model& model, const Design& design, RngStream& rng) {
    design.validate();
    if (design.n < 1 || design.r < 1 || !(design.t0 > 0.0))
        throw std::invalid_argument("generate_hcs_sample: requires n >= 1, r >= 1, T0 > 0");
    HcsSample s;
    s.design = design;
    double u_prev = 0.0;
    for (int i = 1; i <= design.r; ++i) {
        const double u = rng.uniform();
        const double u_ord = 1.0 - (1.0 - u_prev) * std::pow(1.0 - u, 1.0 / (design.n - i + 1));
        const double x = model.quantile(u_ord);
        if (x > design.t0) break;
        s.failures.push_back(x);
        u_prev = u_ord;
    }
    s.d = static_cast<int>(s.failures.size());
    s.eta = (s.d == design.r) ? s.failures.back() : design.t0;
    s.v = v_statistic(s.failures, s.d, design);
    return s;
}

// Joint law of (V, D) for the exponential model. d = 0 is a point mass
// e^{-nT0/theta} at y = nT0 (the returned value is that mass); for d >= 1
// the value is a density in y. Returns 0 outside the feasible support.
double joint_density(double y, int d, double theta, const Design& design);

// E[D | theta] and E[eta | theta] for an arbitrary lifetime model.
template <typename Model>
double expected_failures_given_theta(const Model& model, const Design& design) {
    design.validate();
    if (design.n == 0) return 0.0;
    const int n = design.n, r = design.r;
    const double p = model.cdf(design.t0);
    if (p <= 0.0) return 0.0;
    // E[min(B, r)] with B ~ Binomial(n, F(T0)) = r - sum_{j<r} (r-j) P(B=j).
    double acc = r;
    const double lp = std::log(p), lq = std::log1p(-p);
    for (int j = 0; j < r; ++j)
        acc -= (r - j) * std::exp(log_binomial(n, j) + j * lp + (n - j) * lq);
    return acc;
}

template <typename Model>
double expected_duration_given_theta(const Model& model, const Design& design,
                                     double quad_tol = 1e-8) {
    design.validate();
    if (design.n == 0 || design.t0 == 0.0) return 0.0;
    const int n = design.n, r = design.r;
    const double p = model.cdf(design.t0);
    // P(x_(r) > T0) = P(B < r), B ~ Binomial(n, F(T0)).
    double p_lt_r = 0.0;
    if (p <= 0.0) {
        p_lt_r = 1.0;
    } else {
        const double lp = std::log(p), lq = std::log1p(-p);
        for (int j = 0; j < r; ++j)
            p_lt_r += std::exp(log_binomial(n, j) + j * lp + (n - j) * lq);
    }
    const double coef = r * std::exp(log_binomial(n, r));
    const double tail = integrate(
        [&](double x) {
            const double F = model.cdf(x);
            return x * std::pow(F, r - 1) * std::pow(1.0 - F, n - r) * model.pdf(x);
        },
        0.0, design.t0, quad_tol);
    return design.t0 * p_lt_r + coef * tail;
}

// Prior-averaged closed forms for the exponential / inverse-gamma pair.
double prior_expected_failures(const InverseGammaPrior& prior, const Design& design);
double prior_expected_duration(const InverseGammaPrior& prior, const Design& design);

} // namespace rasp
