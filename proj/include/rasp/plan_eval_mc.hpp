#pragma once

#include <cstdint>

#include "rasp/types.hpp"

namespace rasp {

struct McConfig {
    std::uint64_t s1 = 100000;   // outer replicates
    int s2 = 500;                // posterior draws per replicate (Weibull path)
    std::uint64_t seed = 1;
    unsigned parallel_width = 0; // 0 = hardware concurrency; affects speed only

    void validate() const {
        if (s1 < 1 || s2 < 1)
            throw std::invalid_argument("McConfig: s1 and s2 must be >= 1");
    }
};

// E_X[X^q] at a fixed parameter point: theta^q Gamma(q+1) for the
// exponential model, lambda^{-q/alpha} Gamma(q/alpha + 1) for the Weibull.
double manufacturer_acceptance_moment_exp(double theta, const ManufacturerProfile& profile);
double manufacturer_acceptance_moment_weibull(double alpha, double lambda,
                                              const ManufacturerProfile& profile);

// Pre-posterior Monte Carlo evaluation: per replicate draw theta from the
// manufacturer prior, simulate a hybrid-censored sample, run the consumer's
// post-test decision, and accumulate
//   psi1 = (r1+r2)(b1 E[X^q|theta] - b2) + r2 (cw - E[q(X)|theta]) + r3 b3
//          - b5 d - b6 eta,
// then psi = -b4 n + mean(psi1). Every field carries a Monte Carlo standard
// error. Results are a deterministic function of (design, scenario, cfg)
// regardless of parallel_width: replicate k always uses substream k and the
// reduction runs in fixed chunk order.
PlanEvaluation evaluate_plan_mc(const Design& design, const Scenario& scenario,
                                const McConfig& cfg);

} // namespace rasp
