#pragma once

#include "rasp/decision.hpp"
#include "rasp/types.hpp"

namespace rasp {

// One shifted-gamma block of the closed-form utility: with b = alpha2 - l
// and shift = (n-d+j) T0,
//   H = Gamma(b) / (beta2 + w + shift)^b * [I_{s2}(d, b) - I_{s1}(d, b)].
// s1, s2 are the beta-transformed integration limits, already clamped to
// [0,1]. Requires alpha2 > l.
double h_term(double w, double l, int j, int d, double s1, double s2,
              const InverseGammaPrior& prior, const Design& design);

// Same block integrated over v in [x1, x2]: computes the clamped limits
// h1 = min(max(x1, shift), x2), h2 = max(max(x1, shift), x2) and the
// s-points s_i = (h_i - shift)/(h_i + beta2 + w), then calls h_term.
double h_term_over_interval(double w, double l, int j, int d, double x1, double x2,
                            const InverseGammaPrior& prior, const Design& design);

// Closed-form manufacturer expected utility for the exponential model,
// with the full decomposition. Numerically reliable for n up to about 30
// (the alternating binomial sums lose precision beyond that; use the MC
// engine for larger n).
PlanEvaluation evaluate_plan_exp(const Design& design, const Scenario& scenario);

// Variant that reuses precomputed thresholds (the optimizer's hot loop).
PlanEvaluation evaluate_plan_exp(const Design& design, const Scenario& scenario,
                                 const Thresholds& thresholds);

struct BaselineUtilities {
    double accept_no_warranty = 0.0;
    double accept_with_warranty = 0.0;
    double reject = 0.0;
};

// No-test utilities: (b1 E[X^q] - b2, b1 E[X^q] - E[q(X)] + cw - b2, b3),
// prior-averaged. Works for both lifetime models.
BaselineUtilities baseline_utilities(const Scenario& scenario);

} // namespace rasp
