#pragma once

#include <utility>
#include <vector>

#include "rasp/censoring.hpp"
#include "rasp/lifetime_models.hpp"
#include "rasp/rng.hpp"
#include "rasp/types.hpp"

namespace rasp {

// Rebate paid for a unit that fails at age x: full (cs+cw) on [0,w1),
// pro-rata (cs+cw)(w2-x)/(w2-w1) on [w1,w2), zero from w2 on.
double rebate(double x, const WarrantyPolicy& policy);

// Pre-test (prior) expectations for the exponential / inverse-gamma pair.
double pretest_acceptance_value_exp(const ConsumerProfile& consumer,
                                    const InverseGammaPrior& prior);
double pretest_expected_rebate_exp(const WarrantyPolicy& policy,
                                   const InverseGammaPrior& prior);

struct PretestValues {
    double acceptance_value = 0.0;  // E_prior E_X[U0(A|X)]
    double expected_rebate = 0.0;   // E_prior E_X[q(X)]
};

PretestValues pretest_values_exp(const ConsumerProfile& consumer,
                                 const WarrantyPolicy& policy,
                                 const InverseGammaPrior& prior);
PretestValues pretest_values_weibull(const ConsumerProfile& consumer,
                                     const WarrantyPolicy& policy,
                                     const WeibullPriorPair& prior);

// Staged pre-test rule: accept without warranty if value <= a3, else accept
// with warranty if value - rebate + cw <= a3, else Reject (= run the test).
DecisionOutcome pretest_decision(const ConsumerProfile& consumer,
                                 const WarrantyPolicy& policy,
                                 const PretestValues& values);

// Conjugate update: IG(alpha1, beta1) -> IG(alpha1 + d, beta1 + v).
InverseGammaPrior posterior_params_exp(const InverseGammaPrior& prior,
                                       const HcsSample& sample);

// Posterior expected shortfall statistic A1 and the warranty statistic A2.
// Both are decreasing in v at fixed d.
double a1_statistic(double v, int d, const ConsumerProfile& consumer,
                    const InverseGammaPrior& prior);
double a2_statistic(double v, int d, const WarrantyPolicy& policy,
                    const InverseGammaPrior& prior);

DecisionOutcome posttest_decision_exp(const HcsSample& sample,
                                      const ConsumerProfile& consumer,
                                      const WarrantyPolicy& policy,
                                      const InverseGammaPrior& prior);

// Cut points on v for each d = 0..r. Raw roots saturate to [0, n*T0]
// endpoints when no sign change exists; c1 = clamp(c_raw), c2 =
// min(clamp(cprime_raw), c1), so 0 <= c2 <= c1 <= n*T0 always holds.
struct Thresholds {
    std::vector<double> c_raw;
    std::vector<double> cprime_raw;
    std::vector<double> c1;
    std::vector<double> c2;
};

Thresholds thresholds_exp(const Design& design, const ConsumerProfile& consumer,
                          const WarrantyPolicy& policy, const InverseGammaPrior& prior);

// Weibull acceptance value and expected rebate Q(theta) at a fixed theta.
struct WeibullConsumerValues {
    double acceptance_value = 0.0;
    double expected_rebate = 0.0;  // Q(theta)
};
WeibullConsumerValues consumer_values_weibull(const WeibullModel& theta,
                                              const ConsumerProfile& consumer,
                                              const WarrantyPolicy& policy);

// Sampler for the joint Weibull posterior: alpha from its log-concave
// marginal by adaptive rejection sampling (tangent envelopes seeded around
// the mode), then lambda | alpha ~ Gamma(c + d, v_alpha(x) + d1). For d = 0
// the alpha marginal need not be log-concave and the sampler falls back to
// importance resampling from the prior. Not thread-safe; use one instance
// per worker.
class WeibullPosteriorSampler {
public:
    WeibullPosteriorSampler(const WeibullPriorPair& prior, const HcsSample& sample);

    std::pair<double, double> draw(RngStream& rng);  // (alpha, lambda)

    // Weibull-power form of the sufficient statistic at a given alpha.
    double v_alpha(double alpha) const;
    // Unnormalized log marginal of alpha.
    double log_alpha_marginal(double alpha) const;
    double conditional_shape() const { return cond_shape_; }
    double conditional_rate(double alpha) const { return v_alpha(alpha) + rate_rate_; }

private:
    struct HullPoint {
        double x, h, dh;
    };

    std::vector<double> fails_;
    double sum_log_x_ = 0.0;
    int n_ = 0, r_ = 0, d_ = 0;
    double t0_ = 0.0;
    double shape_shape_ = 0.0, shape_rate_ = 0.0;  // prior on alpha
    double rate_shape_ = 0.0, rate_rate_ = 0.0;    // prior on lambda
    double cond_shape_ = 0.0;

    // adaptive-rejection state (d >= 1)
    std::vector<HullPoint> hull_;
    double d_log_alpha_marginal(double alpha) const;
    void init_hull();
    void insert_hull_point(double x);
    double sample_envelope(RngStream& rng) const;

    // importance-resampling pool (d == 0)
    std::vector<double> pool_;
    void build_pool(RngStream& rng);

    double draw_alpha(RngStream& rng);
};

// Posterior-averaged decision with S2 draws; fills e1/e2.
DecisionOutcome posttest_decision_weibull(const HcsSample& sample,
                                          const ConsumerProfile& consumer,
                                          const WarrantyPolicy& policy,
                                          const WeibullPriorPair& prior,
                                          int s2, RngStream& rng);

} // namespace rasp
