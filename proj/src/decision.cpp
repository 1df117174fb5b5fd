#include "rasp/decision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rasp {

double rebate(double x, const WarrantyPolicy& policy) {
    if (x < 0.0) throw std::domain_error("rebate: lifetime must be nonnegative");
    const double full = policy.cs + policy.cw;
    if (x < policy.w1) return full;
    if (x < policy.w2) return full * (policy.w2 - x) / (policy.w2 - policy.w1);
    return 0.0;
}

double pretest_acceptance_value_exp(const ConsumerProfile& consumer,
                                    const InverseGammaPrior& prior) {
    consumer.validate();
    prior.validate();
    if (!(prior.shape > 1.0))
        throw std::domain_error("pretest_acceptance_value_exp: prior shape must exceed 1");
    const double a = prior.shape, b = prior.scale, L = consumer.min_life;
    const double shortfall =
        L + std::pow(b, a) / ((a - 1.0) * std::pow(b + L, a - 1.0)) - b / (a - 1.0);
    return consumer.a1 / L * shortfall + consumer.a2;
}

double pretest_expected_rebate_exp(const WarrantyPolicy& policy,
                                   const InverseGammaPrior& prior) {
    policy.validate();
    prior.validate();
    if (!(prior.shape > 1.0))
        throw std::domain_error("pretest_expected_rebate_exp: prior shape must exceed 1");
    const double a = prior.shape, b = prior.scale;
    const double full = policy.cs + policy.cw;
    if (policy.w1 == policy.w2) {
        // FRW limit: full refund on [0,w1); E[q] = (cs+cw) E_prior[F(w1)].
        return full * (1.0 - std::pow(b / (b + policy.w1), a));
    }
    const double bracket = std::pow(b + policy.w1, -(a - 1.0)) - std::pow(b + policy.w2, -(a - 1.0));
    return full - full / (policy.w2 - policy.w1) * std::pow(b, a) / (a - 1.0) * bracket;
}

PretestValues pretest_values_exp(const ConsumerProfile& consumer,
                                 const WarrantyPolicy& policy,
                                 const InverseGammaPrior& prior) {
    return {pretest_acceptance_value_exp(consumer, prior),
            pretest_expected_rebate_exp(policy, prior)};
}

namespace {

// E over independent gamma priors of f(alpha, lambda), by nested adaptive
// quadrature over mean +- 12 sd boxes (gamma tails decay fast enough that
// the truncation error is far below the 1e-8 quadrature tolerance).
double gamma_prior_expectation(const WeibullPriorPair& prior,
                               const std::function<double(double, double)>& f) {
    auto range = [](const GammaHyper& g) {
        const double mean = g.shape / g.rate, sd = std::sqrt(g.shape) / g.rate;
        return std::pair<double, double>{std::max(mean - 12.0 * sd, mean * 1e-8),
                                         mean + 12.0 * sd};
    };
    const auto [alo, ahi] = range(prior.shape_hyper);
    const auto [llo, lhi] = range(prior.rate_hyper);
    auto gpdf = [](const GammaHyper& g, double x) {
        return gamma_pdf(x, g.shape, g.rate);
    };
    return integrate(
        [&](double a) {
            const double inner = integrate(
                [&](double l) { return gpdf(prior.rate_hyper, l) * f(a, l); }, llo, lhi, 1e-10);
            return gpdf(prior.shape_hyper, a) * inner;
        },
        alo, ahi, 1e-8);
}

} // namespace

PretestValues pretest_values_weibull(const ConsumerProfile& consumer,
                                     const WarrantyPolicy& policy,
                                     const WeibullPriorPair& prior) {
    consumer.validate();
    policy.validate();
    prior.validate();
    PretestValues out;
    out.acceptance_value = gamma_prior_expectation(prior, [&](double a, double l) {
        return consumer_values_weibull({a, l}, consumer, policy).acceptance_value;
    });
    out.expected_rebate = gamma_prior_expectation(prior, [&](double a, double l) {
        return consumer_values_weibull({a, l}, consumer, policy).expected_rebate;
    });
    return out;
}

DecisionOutcome pretest_decision(const ConsumerProfile& consumer,
                                 const WarrantyPolicy& policy,
                                 const PretestValues& values) {
    DecisionOutcome out;
    out.stage = Stage::PreTest;
    if (values.acceptance_value <= consumer.a3) {
        out.action = Action::AcceptNoWarranty;
    } else if (values.acceptance_value - values.expected_rebate + policy.cw <= consumer.a3) {
        out.action = Action::AcceptWithWarranty;
    } else {
        out.action = Action::Reject;  // proceed to life testing
    }
    return out;
}

InverseGammaPrior posterior_params_exp(const InverseGammaPrior& prior,
                                       const HcsSample& sample) {
    prior.validate();
    if (sample.design.is_no_test()) return prior;
    sample.validate();
    return {prior.shape + sample.d, prior.scale + sample.v};
}

double a1_statistic(double v, int d, const ConsumerProfile& consumer,
                    const InverseGammaPrior& prior) {
    const double a = prior.shape + d, b = prior.scale + v, L = consumer.min_life;
    if (!(a > 1.0)) throw std::domain_error("a1_statistic: requires alpha1 + d > 1");
    // L + b^a / ((a-1)(b+L)^{a-1}) - b/(a-1), computed in logs for large d.
    const double lead = std::exp(a * std::log(b) - (a - 1.0) * std::log(b + L)) / (a - 1.0);
    return L + lead - b / (a - 1.0);
}

double a2_statistic(double v, int d, const WarrantyPolicy& policy,
                    const InverseGammaPrior& prior) {
    const double a = prior.shape + d, b = prior.scale + v;
    if (!(a > 1.0)) throw std::domain_error("a2_statistic: requires alpha1 + d > 1");
    const double full = policy.cs + policy.cw;
    if (policy.w1 == policy.w2) {
        // FRW limit: A2 = cs - (cs+cw) E_post[e^{-w1/theta}].
        return policy.cs - full * std::exp(a * (std::log(b) - std::log(b + policy.w1)));
    }
    const double bracket = std::exp(-(a - 1.0) * std::log(b + policy.w1)) -
                           std::exp(-(a - 1.0) * std::log(b + policy.w2));
    return policy.cs -
           full / (policy.w2 - policy.w1) * std::exp(a * std::log(b)) / (a - 1.0) * bracket;
}

DecisionOutcome posttest_decision_exp(const HcsSample& sample,
                                      const ConsumerProfile& consumer,
                                      const WarrantyPolicy& policy,
                                      const InverseGammaPrior& prior) {
    sample.validate();
    const double a1s = a1_statistic(sample.v, sample.d, consumer, prior);
    const double a2s = a2_statistic(sample.v, sample.d, policy, prior);
    const double ratio = consumer.a1 / consumer.min_life;
    DecisionOutcome out;
    out.stage = Stage::PostTest;
    out.e1 = ratio * a1s + consumer.a2 - consumer.a3;
    out.e2 = ratio * a1s - a2s + consumer.a2 - consumer.a3;
    if (*out.e1 <= 0.0)
        out.action = Action::AcceptNoWarranty;
    else if (*out.e2 <= 0.0)
        out.action = Action::AcceptWithWarranty;
    else
        out.action = Action::Reject;
    return out;
}

Thresholds thresholds_exp(const Design& design, const ConsumerProfile& consumer,
                          const WarrantyPolicy& policy, const InverseGammaPrior& prior) {
    design.validate();
    consumer.validate();
    policy.validate();
    prior.validate();
    const double vmax = design.n * design.t0;
    const double tol = 1e-9 * std::max(vmax, 1.0);
    const double cut1 = consumer.min_life * (consumer.a3 - consumer.a2) / consumer.a1;
    const double cut2 = consumer.a3 - consumer.a2;
    const double ratio = consumer.a1 / consumer.min_life;
    Thresholds th;
    th.c_raw.resize(design.r + 1);
    th.cprime_raw.resize(design.r + 1);
    th.c1.resize(design.r + 1);
    th.c2.resize(design.r + 1);
    for (int d = 0; d <= design.r; ++d) {
        // A1 and (a1/L)A1 - A2 are decreasing in v; the acceptance regions are
        // upper tails in v, so the roots saturate to the interval endpoints
        // when the statistic never crosses the cut on [0, n*T0].
        th.c_raw[d] = find_root_decreasing(
            [&](double v) { return a1_statistic(v, d, consumer, prior) - cut1; }, 0.0, vmax, tol);
        th.cprime_raw[d] = find_root_decreasing(
            [&](double v) {
                return ratio * a1_statistic(v, d, consumer, prior) -
                       a2_statistic(v, d, policy, prior) - cut2;
            },
            0.0, vmax, tol);
        th.c1[d] = std::min(std::max(0.0, th.c_raw[d]), vmax);
        th.c2[d] = std::min(std::max(0.0, th.cprime_raw[d]), th.c1[d]);
    }
    return th;
}

WeibullConsumerValues consumer_values_weibull(const WeibullModel& theta,
                                              const ConsumerProfile& consumer,
                                              const WarrantyPolicy& policy) {
    if (!(theta.alpha > 0.0) || !(theta.lambda > 0.0))
        throw std::domain_error("consumer_values_weibull: alpha, lambda must be positive");
    const double s = 1.0 / theta.alpha;
    const double lam_pow = std::pow(theta.lambda, s);
    const double L = consumer.min_life;
    WeibullConsumerValues out;
    const double gL = lower_incomplete_gamma(s, theta.lambda * std::pow(L, theta.alpha));
    out.acceptance_value =
        consumer.a1 * (1.0 - gL / (theta.alpha * lam_pow * L)) + consumer.a2;
    const double full = policy.cs + policy.cw;
    if (policy.w1 == policy.w2) {
        out.expected_rebate = policy.w1 == 0.0 ? 0.0 : full * theta.cdf(policy.w1);
    } else {
        const double g2 = lower_incomplete_gamma(s, theta.lambda * std::pow(policy.w2, theta.alpha));
        const double g1 = policy.w1 == 0.0
                              ? 0.0
                              : lower_incomplete_gamma(s, theta.lambda * std::pow(policy.w1, theta.alpha));
        out.expected_rebate =
            full * (1.0 - (g2 - g1) / (theta.alpha * lam_pow * (policy.w2 - policy.w1)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weibull posterior sampler
// ---------------------------------------------------------------------------

namespace {
constexpr double kAlphaFloor = 1e-8;
constexpr std::size_t kMaxHullPoints = 64;
constexpr std::size_t kPoolSize = 4096;
} // namespace

WeibullPosteriorSampler::WeibullPosteriorSampler(const WeibullPriorPair& prior,
                                                 const HcsSample& sample) {
    prior.validate();
    sample.validate();
    fails_ = sample.failures;
    n_ = sample.design.n;
    r_ = sample.design.r;
    d_ = sample.d;
    t0_ = sample.design.t0;
    shape_shape_ = prior.shape_hyper.shape;
    shape_rate_ = prior.shape_hyper.rate;
    rate_shape_ = prior.rate_hyper.shape;
    rate_rate_ = prior.rate_hyper.rate;
    cond_shape_ = rate_shape_ + d_;
    for (double x : fails_) sum_log_x_ += std::log(x);
    if (d_ >= 1) init_hull();
}

double WeibullPosteriorSampler::v_alpha(double alpha) const {
    double acc = 0.0;
    for (double x : fails_) acc += std::pow(x, alpha);
    if (d_ == r_ && d_ > 0)
        acc += (n_ - r_) * std::pow(fails_.back(), alpha);
    else
        acc += (n_ - d_) * std::pow(t0_, alpha);
    return acc;
}

double WeibullPosteriorSampler::log_alpha_marginal(double alpha) const {
    // lambda integrated out of the joint posterior:
    //   (u+d-1) ln a - v a + a sum(ln x) - (c+d) ln(v_a + d1)   (+ const)
    return (shape_shape_ + d_ - 1.0) * std::log(alpha) - shape_rate_ * alpha +
           alpha * sum_log_x_ - cond_shape_ * std::log(v_alpha(alpha) + rate_rate_);
}

double WeibullPosteriorSampler::d_log_alpha_marginal(double alpha) const {
    double dv = 0.0;
    for (double x : fails_) dv += std::pow(x, alpha) * std::log(x);
    if (d_ == r_ && d_ > 0) {
        const double xr = fails_.back();
        dv += (n_ - r_) * std::pow(xr, alpha) * std::log(xr);
    } else {
        dv += (n_ - d_) * std::pow(t0_, alpha) * std::log(t0_);
    }
    return (shape_shape_ + d_ - 1.0) / alpha - shape_rate_ + sum_log_x_ -
           cond_shape_ * dv / (v_alpha(alpha) + rate_rate_);
}

void WeibullPosteriorSampler::init_hull() {
    // Locate the mode: h' is decreasing (log-concave marginal for d >= 1).
    double lo = kAlphaFloor, hi = 1.0;
    while (d_log_alpha_marginal(hi) > 0.0 && hi < 1e6) hi *= 2.0;
    while (d_log_alpha_marginal(lo) < 0.0 && lo > 1e-12) lo *= 0.5;
    double mode = find_root_decreasing(
        [&](double a) { return d_log_alpha_marginal(a); }, lo, hi, 1e-10 * std::max(1.0, hi));
    mode = std::max(mode, kAlphaFloor);

    // Curvature scale from a symmetric second difference at the mode.
    const double eps = std::max(1e-4, 1e-4 * mode);
    const double h2 = (d_log_alpha_marginal(mode + eps) - d_log_alpha_marginal(mode - eps)) /
                      (2.0 * eps);
    double sd = (h2 < 0.0) ? 1.0 / std::sqrt(-h2) : mode;
    if (!std::isfinite(sd) || sd <= 0.0) sd = std::max(mode, 1.0);

    const double offsets[5] = {-2.0, -0.7, 0.0, 0.7, 2.0};
    hull_.clear();
    for (double o : offsets) {
        const double x = std::max(mode + o * sd, kAlphaFloor * (1.0 + hull_.size()));
        if (!hull_.empty() && x <= hull_.back().x) continue;
        hull_.push_back({x, log_alpha_marginal(x), d_log_alpha_marginal(x)});
    }
    // The envelope needs a rising leftmost tangent and a falling rightmost one.
    while (hull_.front().dh <= 0.0 && hull_.front().x > 1e-10) {
        const double x = hull_.front().x * 0.25;
        hull_.insert(hull_.begin(), {x, log_alpha_marginal(x), d_log_alpha_marginal(x)});
    }
    while (hull_.back().dh >= 0.0 && hull_.back().x < 1e8) {
        const double x = hull_.back().x * 4.0;
        hull_.push_back({x, log_alpha_marginal(x), d_log_alpha_marginal(x)});
    }
}

void WeibullPosteriorSampler::insert_hull_point(double x) {
    if (hull_.size() >= kMaxHullPoints) return;
    HullPoint p{x, log_alpha_marginal(x), d_log_alpha_marginal(x)};
    auto it = std::lower_bound(hull_.begin(), hull_.end(), x,
                               [](const HullPoint& h, double v) { return h.x < v; });
    if (it != hull_.end() && std::fabs(it->x - x) < 1e-14) return;
    hull_.insert(it, p);
}

// Sample from the piecewise-exponential upper hull built from the tangents.
double WeibullPosteriorSampler::sample_envelope(RngStream& rng) const {
    const std::size_t m = hull_.size();
    // Tangent intersections z_0..z_m bound segment j on [z_j, z_{j+1}].
    std::vector<double> z(m + 1);
    z[0] = kAlphaFloor * 0.5;
    for (std::size_t j = 1; j < m; ++j) {
        const auto& a = hull_[j - 1];
        const auto& b = hull_[j];
        double zz;
        if (std::fabs(a.dh - b.dh) < 1e-13) {
            zz = 0.5 * (a.x + b.x);
        } else {
            zz = (b.h - a.h - b.x * b.dh + a.x * a.dh) / (a.dh - b.dh);
        }
        z[j] = std::min(std::max(zz, a.x), b.x);
    }
    z[m] = std::numeric_limits<double>::infinity();

    // Segment masses in log space relative to the largest tangent value.
    std::vector<double> seg_log(m);
    double log_max = -std::numeric_limits<double>::infinity();
    auto tangent_at = [&](std::size_t j, double x) {
        return hull_[j].h + (x - hull_[j].x) * hull_[j].dh;
    };
    for (std::size_t j = 0; j < m; ++j) {
        const double k = hull_[j].dh;
        const double lo = z[j], hi = z[j + 1];
        double lmass;
        if (std::isinf(hi)) {
            // requires k < 0
            lmass = tangent_at(j, lo) - std::log(-k);
        } else if (std::fabs(k) < 1e-13) {
            lmass = tangent_at(j, lo) + std::log(hi - lo);
        } else {
            const double hl = tangent_at(j, lo), hh = tangent_at(j, hi);
            const double hmax = std::max(hl, hh);
            lmass = hmax + std::log(std::fabs(std::expm1(-std::fabs(hh - hl)))) - std::log(std::fabs(k));
        }
        seg_log[j] = lmass;
        log_max = std::max(log_max, lmass);
    }
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) total += std::exp(seg_log[j] - log_max);

    double pick = rng.uniform() * total;
    std::size_t j = 0;
    for (; j + 1 < m; ++j) {
        const double w = std::exp(seg_log[j] - log_max);
        if (pick <= w) break;
        pick -= w;
    }
    // Inverse-cdf within the chosen exponential-linear segment.
    const double k = hull_[j].dh;
    const double lo = z[j], hi = z[j + 1];
    const double u = rng.uniform();
    if (std::isinf(hi)) return lo - std::log1p(-u) / (-k);
    if (std::fabs(k) < 1e-13) return lo + u * (hi - lo);
    const double span = std::expm1(k * (hi - lo));
    return lo + std::log1p(u * span) / k;
}

void WeibullPosteriorSampler::build_pool(RngStream& rng) {
    // d = 0: self-normalized importance resampling with the prior proposal.
    // Weight(alpha) = (d1 / (d1 + n T0^alpha))^{c}, in log space.
    std::vector<double> draws(kPoolSize), logw(kPoolSize);
    double wmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < kPoolSize; ++i) {
        const double a = rng.gamma(shape_shape_, shape_rate_);
        draws[i] = a;
        logw[i] = -rate_shape_ * std::log1p(n_ * std::pow(t0_, a) / rate_rate_);
        wmax = std::max(wmax, logw[i]);
    }
    std::vector<double> cum(kPoolSize);
    double acc = 0.0;
    for (std::size_t i = 0; i < kPoolSize; ++i) {
        acc += std::exp(logw[i] - wmax);
        cum[i] = acc;
    }
    // Systematic resample into an equal-weight pool.
    pool_.resize(kPoolSize);
    const double step = acc / kPoolSize;
    double pos = rng.uniform() * step;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < kPoolSize; ++i) {
        while (idx + 1 < kPoolSize && cum[idx] < pos) ++idx;
        pool_[i] = draws[idx];
        pos += step;
    }
}

double WeibullPosteriorSampler::draw_alpha(RngStream& rng) {
    if (d_ == 0) {
        if (pool_.empty()) build_pool(rng);
        const std::size_t i =
            std::min<std::size_t>(static_cast<std::size_t>(rng.uniform() * pool_.size()),
                                  pool_.size() - 1);
        return pool_[i];
    }
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const double x = sample_envelope(rng);
        if (!(x > 0.0) || !std::isfinite(x)) continue;
        // Squeeze from the chord, exact test from the log density.
        const double u = rng.uniform();
        auto it = std::lower_bound(hull_.begin(), hull_.end(), x,
                                   [](const HullPoint& h, double v) { return h.x < v; });
        double upper;
        if (it == hull_.begin())
            upper = it->h + (x - it->x) * it->dh;
        else if (it == hull_.end())
            upper = (it - 1)->h + (x - (it - 1)->x) * (it - 1)->dh;
        else {
            const double t1 = (it - 1)->h + (x - (it - 1)->x) * (it - 1)->dh;
            const double t2 = it->h + (x - it->x) * it->dh;
            upper = std::min(t1, t2);
        }
        if (it != hull_.begin() && it != hull_.end()) {
            const auto& a = *(it - 1);
            const auto& b = *it;
            const double chord = a.h + (x - a.x) * (b.h - a.h) / (b.x - a.x);
            if (std::log(u) <= chord - upper) return x;  // squeeze accept
        }
        const double h = log_alpha_marginal(x);
        if (std::log(u) <= h - upper) {
            return x;
        }
        insert_hull_point(x);
    }
    throw std::runtime_error("WeibullPosteriorSampler: adaptive rejection failed to accept");
}

std::pair<double, double> WeibullPosteriorSampler::draw(RngStream& rng) {
    const double alpha = draw_alpha(rng);
    const double lambda = rng.gamma(cond_shape_, conditional_rate(alpha));
    return {alpha, lambda};
}

DecisionOutcome posttest_decision_weibull(const HcsSample& sample,
                                          const ConsumerProfile& consumer,
                                          const WarrantyPolicy& policy,
                                          const WeibullPriorPair& prior,
                                          int s2, RngStream& rng) {
    if (s2 < 1) throw std::invalid_argument("posttest_decision_weibull: S2 must be >= 1");
    WeibullPosteriorSampler sampler(prior, sample);
    double sum_value = 0.0, sum_q = 0.0;
    for (int i = 0; i < s2; ++i) {
        const auto [alpha, lambda] = sampler.draw(rng);
        const auto vals = consumer_values_weibull({alpha, lambda}, consumer, policy);
        sum_value += vals.acceptance_value;
        sum_q += vals.expected_rebate;
    }
    const double value = sum_value / s2;
    const double q_mean = sum_q / s2;
    DecisionOutcome out;
    out.stage = Stage::PostTest;
    out.e1 = value - consumer.a3;
    out.e2 = value - q_mean + policy.cw - consumer.a3;
    if (*out.e1 <= 0.0)
        out.action = Action::AcceptNoWarranty;
    else if (*out.e2 <= 0.0)
        out.action = Action::AcceptWithWarranty;
    else
        out.action = Action::Reject;
    return out;
}

} // namespace rasp
