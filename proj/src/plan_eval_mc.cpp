#include "rasp/plan_eval_mc.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "rasp/censoring.hpp"
#include "rasp/decision.hpp"
#include "rasp/lifetime_models.hpp"

namespace rasp {

double manufacturer_acceptance_moment_exp(double theta, const ManufacturerProfile& profile) {
    if (!(theta > 0.0))
        throw std::domain_error("manufacturer_acceptance_moment_exp: theta must be positive");
    return ExponentialModel{theta}.moment(profile.q);
}

double manufacturer_acceptance_moment_weibull(double alpha, double lambda,
                                              const ManufacturerProfile& profile) {
    if (!(alpha > 0.0) || !(lambda > 0.0))
        throw std::domain_error("manufacturer_acceptance_moment_weibull: invalid parameters");
    return WeibullModel{alpha, lambda}.moment(profile.q);
}

namespace mc_detail {

constexpr std::uint64_t kChunk = 4096;

// Per-replicate contribution; the squared fields feed the SE estimates.
struct ChunkSums {
    double psi = 0, psi2 = 0;
    double r1 = 0, r2 = 0, r3 = 0;
    double d = 0, d2 = 0;
    double eta = 0, eta2 = 0;
    double lw = 0, lw2 = 0;
};

// Runs body(replicate_index, sums) over s1 replicates, chunked for a
// scheduling-independent reduction.
template <typename Body>
PlanEvaluation run_replicates(const Design& design, const ManufacturerProfile& mfr,
                              const McConfig& cfg, const Body& body) {
    const std::uint64_t s1 = cfg.s1;
    const std::uint64_t n_chunks = (s1 + kChunk - 1) / kChunk;
    std::vector<ChunkSums> partials(n_chunks);

    unsigned width = cfg.parallel_width;
    if (width == 0) width = std::max(1u, std::thread::hardware_concurrency());
    width = static_cast<unsigned>(std::min<std::uint64_t>(width, n_chunks));

    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            ChunkSums sums;
            const std::uint64_t lo = c * kChunk;
            const std::uint64_t hi = std::min(lo + kChunk, s1);
            for (std::uint64_t u = lo; u < hi; ++u) body(u, sums);
            partials[c] = sums;
        }
    };
    if (width <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(width);
        for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Fixed-order reduction over chunks.
    ChunkSums tot;
    for (const auto& p : partials) {
        tot.psi += p.psi;  tot.psi2 += p.psi2;
        tot.r1 += p.r1;    tot.r2 += p.r2;   tot.r3 += p.r3;
        tot.d += p.d;      tot.d2 += p.d2;
        tot.eta += p.eta;  tot.eta2 += p.eta2;
        tot.lw += p.lw;    tot.lw2 += p.lw2;
    }

    const double m = static_cast<double>(s1);
    auto mean_se = [&](double sum, double sumsq) {
        const double mean = sum / m;
        const double var = std::max(0.0, sumsq / m - mean * mean);
        return std::pair<double, double>{mean, std::sqrt(var / m)};
    };
    auto prob_se = [&](double count) {
        const double p = count / m;
        return std::pair<double, double>{p, std::sqrt(std::max(0.0, p * (1.0 - p)) / m)};
    };

    PlanEvaluation ev;
    const auto [psi_m, psi_s] = mean_se(tot.psi, tot.psi2);
    ev.psi = -mfr.b4 * design.n + psi_m;
    ev.psi_se = psi_s;
    std::tie(ev.p_awo, ev.p_awo_se) = prob_se(tot.r1);
    std::tie(ev.p_aw, ev.p_aw_se) = prob_se(tot.r2);
    std::tie(ev.p_r, ev.p_r_se) = prob_se(tot.r3);
    std::tie(ev.e_d, ev.e_d_se) = mean_se(tot.d, tot.d2);
    std::tie(ev.e_eta, ev.e_eta_se) = mean_se(tot.eta, tot.eta2);
    std::tie(ev.l_w, ev.l_w_se) = mean_se(tot.lw, tot.lw2);
    return ev;
}

// Expected per-unit rebate at a fixed theta, exponential model.
inline double expected_rebate_exp_theta(double theta, const WarrantyPolicy& wty) {
    const double full = wty.cs + wty.cw;
    if (wty.w1 == wty.w2)
        return wty.w1 == 0.0 ? 0.0 : full * (-std::expm1(-wty.w1 / theta));
    return full - full / (wty.w2 - wty.w1) * theta *
                      (std::exp(-wty.w1 / theta) - std::exp(-wty.w2 / theta));
}

} // namespace mc_detail

PlanEvaluation evaluate_plan_mc(const Design& design, const Scenario& scenario,
                                const McConfig& cfg) {
    scenario.validate();
    design.validate();
    cfg.validate();
    if (design.n < 1)
        throw std::invalid_argument("evaluate_plan_mc: requires n >= 1");
    const auto& mfr = scenario.manufacturer;
    const auto& wty = scenario.warranty;
    const RngStream base(cfg.seed, 0);

    if (scenario.model == ModelKind::Exponential) {
        const auto& priors = scenario.exp_priors();
        auto body = [&](std::uint64_t u, mc_detail::ChunkSums& sums) {
            RngStream rng = base.substream(u);
            const double theta = rng.inverse_gamma(priors.manufacturer.shape,
                                                   priors.manufacturer.scale);
            const HcsSample sample = generate_hcs_sample(ExponentialModel{theta}, design, rng);
            // The exponential consumer decision is available in closed form;
            // this is the S2 -> infinity limit of the posterior averaging.
            const DecisionOutcome dec =
                posttest_decision_exp(sample, scenario.consumer, wty, priors.consumer);
            const double moment = manufacturer_acceptance_moment_exp(theta, mfr);
            const double eq = mc_detail::expected_rebate_exp_theta(theta, wty);
            double psi1 = -mfr.b5 * sample.d - mfr.b6 * sample.eta;
            if (dec.action == Action::Reject) {
                psi1 += mfr.b3;
                sums.r3 += 1.0;
            } else {
                psi1 += mfr.b1 * moment - mfr.b2;
                if (dec.action == Action::AcceptWithWarranty) {
                    psi1 += wty.cw - eq;
                    const double lw = eq - wty.cw;
                    sums.lw += lw;
                    sums.lw2 += lw * lw;
                    sums.r2 += 1.0;
                } else {
                    sums.r1 += 1.0;
                }
            }
            sums.psi += psi1;
            sums.psi2 += psi1 * psi1;
            sums.d += sample.d;
            sums.d2 += static_cast<double>(sample.d) * sample.d;
            sums.eta += sample.eta;
            sums.eta2 += sample.eta * sample.eta;
        };
        return mc_detail::run_replicates(design, mfr, cfg, body);
    }

    const auto& priors = scenario.weibull_priors();
    auto body = [&](std::uint64_t u, mc_detail::ChunkSums& sums) {
        RngStream rng = base.substream(u);
        const double alpha = rng.gamma(priors.manufacturer.shape_hyper.shape,
                                       priors.manufacturer.shape_hyper.rate);
        const double lambda = rng.gamma(priors.manufacturer.rate_hyper.shape,
                                        priors.manufacturer.rate_hyper.rate);
        const WeibullModel theta{alpha, lambda};
        const HcsSample sample = generate_hcs_sample(theta, design, rng);
        const DecisionOutcome dec = posttest_decision_weibull(
            sample, scenario.consumer, wty, priors.consumer, cfg.s2, rng);
        const double moment = manufacturer_acceptance_moment_weibull(alpha, lambda, mfr);
        const double eq = consumer_values_weibull(theta, scenario.consumer, wty).expected_rebate;
        double psi1 = -mfr.b5 * sample.d - mfr.b6 * sample.eta;
        if (dec.action == Action::Reject) {
            psi1 += mfr.b3;
            sums.r3 += 1.0;
        } else {
            psi1 += mfr.b1 * moment - mfr.b2;
            if (dec.action == Action::AcceptWithWarranty) {
                psi1 += wty.cw - eq;
                const double lw = eq - wty.cw;
                sums.lw += lw;
                sums.lw2 += lw * lw;
                sums.r2 += 1.0;
            } else {
                sums.r1 += 1.0;
            }
        }
        sums.psi += psi1;
        sums.psi2 += psi1 * psi1;
        sums.d += sample.d;
        sums.d2 += static_cast<double>(sample.d) * sample.d;
        sums.eta += sample.eta;
        sums.eta2 += sample.eta * sample.eta;
    };
    return mc_detail::run_replicates(design, mfr, cfg, body);
}

} // namespace rasp
