#include "rasp/plan_eval_exact.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "rasp/censoring.hpp"
#include "rasp/special_functions.hpp"

namespace rasp {

double h_term(double w, double l, int j, int d, double s1, double s2,
              const InverseGammaPrior& prior, const Design& design) {
    prior.validate();
    if (!(prior.shape > l))
        throw std::domain_error("h_term: requires alpha2 > l");
    if (s1 < 0.0 || s1 > 1.0 || s2 < 0.0 || s2 > 1.0)
        throw std::domain_error("h_term: s-points must lie in [0,1]");
    const double b = prior.shape - l;
    const double shift = (design.n + j - d) * design.t0;
    const double denom = prior.scale + w + shift;
    const double ib2 = regularized_incomplete_beta(s2, d, b);
    const double ib1 = regularized_incomplete_beta(s1, d, b);
    return std::exp(std::lgamma(b) - b * std::log(denom)) * (ib2 - ib1);
}

double h_term_over_interval(double w, double l, int j, int d, double x1, double x2,
                            const InverseGammaPrior& prior, const Design& design) {
    const double shift = (design.n + j - d) * design.t0;
    const double h1 = std::min(std::max(x1, shift), x2);
    const double h2 = std::max(std::max(x1, shift), x2);
    auto s_point = [&](double h) {
        const double s = (h - shift) / (h + prior.scale + w);
        return std::min(std::max(s, 0.0), 1.0);
    };
    return h_term(w, l, j, d, s_point(h1), s_point(h2), prior, design);
}

namespace {

struct KahanAcc {
    double sum = 0.0, comp = 0.0;
    void add(double term) {
        const double t = term - comp;
        const double s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
};

// E[theta^l e^{-w/theta} ; v in (lo(d), hi(d))] over manufacturer prior and
// the sampling law of (V, D). Assembles the d=0 atom, the binomial-
// alternating family for 1 <= d <= r-1 and the two d = r term families.
double region_moment(const Design& design, const InverseGammaPrior& prior,
                     const std::function<double(int)>& lo,
                     const std::function<double(int)>& hi,
                     double l, double w) {
    const int n = design.n, r = design.r;
    const double nt0 = n * design.t0;
    const double log_prior_norm = prior.shape * std::log(prior.scale) - std::lgamma(prior.shape);
    KahanAcc acc;

    // d = 0 atom at v = nT0: E[theta^l e^{-(w + nT0)/theta}].
    if (lo(0) < nt0 && nt0 <= hi(0)) {
        acc.add(std::exp(log_prior_norm + std::lgamma(prior.shape - l) -
                         (prior.shape - l) * std::log(prior.scale + w + nt0)));
    }
    for (int d = 1; d <= r - 1; ++d) {
        const double lb_nd = log_binomial(n, d);
        for (int i = 0; i <= d; ++i) {
            const double sign = (i % 2 == 0) ? 1.0 : -1.0;
            const double coef = std::exp(lb_nd + log_binomial(d, i) + log_prior_norm);
            acc.add(sign * coef *
                    h_term_over_interval(w, l, i, d, lo(d), hi(d), prior, design));
        }
    }
    // d = r: unshifted gamma term (shift index j = r - n) plus correction series.
    acc.add(std::exp(log_prior_norm) *
            h_term_over_interval(w, l, r - n, r, lo(r), hi(r), prior, design));
    const double lead = r * std::exp(log_binomial(n, r));
    for (int k = 1; k <= r; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double coef =
            lead / (n - r + k) * std::exp(log_binomial(r - 1, k - 1) + log_prior_norm);
        acc.add(sign * coef * h_term_over_interval(w, l, k, r, lo(r), hi(r), prior, design));
    }
    return acc.sum;
}

} // namespace

PlanEvaluation evaluate_plan_exp(const Design& design, const Scenario& scenario) {
    const auto& priors = scenario.exp_priors();
    const Thresholds th =
        thresholds_exp(design, scenario.consumer, scenario.warranty, priors.consumer);
    return evaluate_plan_exp(design, scenario, th);
}

PlanEvaluation evaluate_plan_exp(const Design& design, const Scenario& scenario,
                                 const Thresholds& th) {
    scenario.validate();
    design.validate();
    if (scenario.model != ModelKind::Exponential)
        throw std::invalid_argument("evaluate_plan_exp: exponential scenarios only");
    if (design.n < 1)
        throw std::invalid_argument("evaluate_plan_exp: requires n >= 1");
    const auto& priors = scenario.exp_priors();
    const auto& mfr = scenario.manufacturer;
    const auto& wty = scenario.warranty;
    const InverseGammaPrior& pm = priors.manufacturer;
    if (!(pm.shape > std::max(mfr.q, 1.0)))
        throw std::domain_error("evaluate_plan_exp: requires alpha2 > max(q, 1)");

    const double nt0 = design.n * design.t0;
    auto at_c1 = [&](int d) { return th.c1[d]; };
    auto at_c2 = [&](int d) { return th.c2[d]; };
    auto at_zero = [&](int) { return 0.0; };
    auto at_top = [&](int) { return nt0; };

    PlanEvaluation ev;
    ev.p_awo = region_moment(design, pm, at_c1, at_top, 0.0, 0.0);
    ev.p_aw = region_moment(design, pm, at_c2, at_c1, 0.0, 0.0);
    ev.p_r = region_moment(design, pm, at_zero, at_c2, 0.0, 0.0);
    ev.e_d = prior_expected_failures(pm, design);
    ev.e_eta = prior_expected_duration(pm, design);

    // Acceptance moment E[theta^q ; X union Y] and the warranty loss over Y.
    const double moment_xy = region_moment(design, pm, at_c2, at_top, mfr.q, 0.0);
    const double full = wty.cs + wty.cw;
    if (wty.w1 == wty.w2) {
        // FRW limit: E[q|theta] - cw = cs - (cs+cw) e^{-w1/theta}.
        const double w_frw =
            wty.w1 == 0.0 ? ev.p_aw : region_moment(design, pm, at_c2, at_c1, 0.0, wty.w1);
        ev.l_w = wty.cs * ev.p_aw - full * w_frw;
    } else {
        const double w_hi = region_moment(design, pm, at_c2, at_c1, 1.0, wty.w1);
        const double w_lo = region_moment(design, pm, at_c2, at_c1, 1.0, wty.w2);
        ev.l_w = wty.cs * ev.p_aw - full / (wty.w2 - wty.w1) * (w_hi - w_lo);
    }

    ev.psi = mfr.b1 * std::exp(log_gamma(mfr.q + 1.0)) * moment_xy -
             mfr.b2 * (ev.p_awo + ev.p_aw) - ev.l_w + mfr.b3 * ev.p_r -
             mfr.b4 * design.n - mfr.b5 * ev.e_d - mfr.b6 * ev.e_eta;
    return ev;
}

BaselineUtilities baseline_utilities(const Scenario& scenario) {
    scenario.validate();
    const auto& mfr = scenario.manufacturer;
    const auto& wty = scenario.warranty;
    BaselineUtilities out;
    out.reject = mfr.b3;

    double prior_moment;    // E_prior[E_X(X^q)]
    double prior_rebate;    // E_prior[E_X(q(X))]
    if (scenario.model == ModelKind::Exponential) {
        const auto& pm = scenario.exp_priors().manufacturer;
        if (!(pm.shape > mfr.q))
            throw std::domain_error("baseline_utilities: requires alpha2 > q");
        prior_moment = std::exp(mfr.q * std::log(pm.scale) + log_gamma(mfr.q + 1.0) +
                                log_gamma(pm.shape - mfr.q) - log_gamma(pm.shape));
        prior_rebate = pretest_expected_rebate_exp(wty, pm);
    } else {
        const auto& pm = scenario.weibull_priors().manufacturer;
        // Quadrature over the independent gamma priors.
        ConsumerProfile dummy{1.0, 0.0, 0.0, 1.0};
        PretestValues pv = pretest_values_weibull(dummy, wty, pm);
        prior_rebate = pv.expected_rebate;
        prior_moment = 0.0;
        {
            // E[lambda^{-q/alpha} Gamma(q/alpha + 1)] by the same nested rule.
            const auto& g1 = pm.shape_hyper;
            const auto& g2 = pm.rate_hyper;
            const double a_lo = std::max(g1.mean() - 12.0 * std::sqrt(g1.shape) / g1.rate,
                                         g1.mean() * 1e-8);
            const double a_hi = g1.mean() + 12.0 * std::sqrt(g1.shape) / g1.rate;
            const double l_lo = std::max(g2.mean() - 12.0 * std::sqrt(g2.shape) / g2.rate,
                                         g2.mean() * 1e-8);
            const double l_hi = g2.mean() + 12.0 * std::sqrt(g2.shape) / g2.rate;
            prior_moment = integrate(
                [&](double a) {
                    const double inner = integrate(
                        [&](double l) {
                            return gamma_pdf(l, g2.shape, g2.rate) *
                                   WeibullModel{a, l}.moment(mfr.q);
                        },
                        l_lo, l_hi, 1e-10);
                    return gamma_pdf(a, g1.shape, g1.rate) * inner;
                },
                a_lo, a_hi, 1e-8);
        }
    }
    out.accept_no_warranty = mfr.b1 * prior_moment - mfr.b2;
    out.accept_with_warranty = mfr.b1 * prior_moment - prior_rebate + wty.cw - mfr.b2;
    return out;
}

} // namespace rasp
