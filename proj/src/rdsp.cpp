#include "rasp/rdsp.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "rasp/decision.hpp"
#include "rasp/lifetime_models.hpp"

namespace rasp {

namespace {

struct RandomConsumer {
    ConsumerProfile profile;
    InverseGammaPrior prior;
};

RandomConsumer draw_consumer(const RdspBounds& b, RngStream& rng) {
    RandomConsumer c;
    c.profile.a1 = rng.uniform(b.a1_lo, b.a1_hi);
    c.profile.a2 = rng.uniform(b.a2_lo, b.a2_hi);
    c.profile.a3 = rng.uniform(b.a3_lo, b.a3_hi);
    c.profile.min_life = rng.uniform(b.min_life_lo, b.min_life_hi);
    c.prior.shape = rng.uniform(b.alpha1_lo, b.alpha1_hi);
    c.prior.scale = rng.uniform(b.beta1_lo, b.beta1_hi);
    return c;
}

// Full staged walk of one consumer draw against one sample. Stage counters
// follow the r01/r02/r03 and r11/r12/r13 bookkeeping.
struct StageCounts {
    long r01 = 0, r02 = 0, r03 = 0, r11 = 0, r12 = 0, r13 = 0;
};

void walk_consumer(const RandomConsumer& c, const HcsSample& sample,
                   const WarrantyPolicy& policy, StageCounts& k) {
    const PretestValues pre = pretest_values_exp(c.profile, policy, c.prior);
    if (pre.acceptance_value <= c.profile.a3) {
        ++k.r01;
        return;
    }
    if (pre.acceptance_value - pre.expected_rebate + policy.cw <= c.profile.a3) {
        ++k.r02;
        return;
    }
    ++k.r03;
    const double a1s = a1_statistic(sample.v, sample.d, c.profile, c.prior);
    const double ratio = c.profile.a1 / c.profile.min_life;
    if (ratio * a1s + c.profile.a2 - c.profile.a3 <= 0.0) {
        ++k.r11;
        return;
    }
    const double a2s = a2_statistic(sample.v, sample.d, policy, c.prior);
    if (ratio * a1s - a2s + c.profile.a2 - c.profile.a3 <= 0.0)
        ++k.r12;
    else
        ++k.r13;
}

} // namespace

ActionProbabilities estimate_action_probabilities(const HcsSample& sample,
                                                  const RdspBounds& bounds,
                                                  const WarrantyPolicy& policy,
                                                  RngStream& rng) {
    bounds.validate();
    sample.validate();
    StageCounts k;
    for (int i = 0; i < bounds.k; ++i)
        walk_consumer(draw_consumer(bounds, rng), sample, policy, k);
    ActionProbabilities out;
    const double kk = bounds.k;
    out.p0_awo = k.r01 / kk;
    out.p0_aw = k.r02 / kk;
    out.p0_r = k.r03 / kk;
    if (k.r03 == 0) {
        // No draw reached the test; report the rejection-certain convention.
        out.p1_awo = 0.0;
        out.p1_aw = 0.0;
        out.p1_r = 1.0;
        out.p1_defined = false;
    } else {
        out.p1_awo = static_cast<double>(k.r11) / k.r03;
        out.p1_aw = static_cast<double>(k.r12) / k.r03;
        out.p1_r = static_cast<double>(k.r13) / k.r03;
    }
    return out;
}

PlanEvaluation evaluate_plan_rdsp(const Design& design, const Scenario& scenario,
                                  const McConfig& cfg) {
    scenario.validate();
    design.validate();
    cfg.validate();
    if (scenario.model != ModelKind::Exponential)
        throw std::invalid_argument("evaluate_plan_rdsp: exponential scenarios only");
    if (!scenario.rdsp)
        throw std::invalid_argument("evaluate_plan_rdsp: scenario has no rdsp bounds");
    if (design.n < 1)
        throw std::invalid_argument("evaluate_plan_rdsp: requires n >= 1");
    const RdspBounds& bounds = *scenario.rdsp;
    const auto& mfr = scenario.manufacturer;
    const auto& wty = scenario.warranty;
    const auto& pm = scenario.exp_priors().manufacturer;
    const RngStream base(cfg.seed, 0);

    constexpr std::uint64_t kChunk = 256;  // K inner draws dominate; small chunks
    const std::uint64_t s1 = cfg.s1;
    const std::uint64_t n_chunks = (s1 + kChunk - 1) / kChunk;

    struct Sums {
        double psi = 0, psi2 = 0, p1 = 0, p2 = 0, p3 = 0;
        double p1sq = 0, p2sq = 0, p3sq = 0;
        double d = 0, d2 = 0, eta = 0, eta2 = 0, lw = 0, lw2 = 0;
    };
    std::vector<Sums> partials(n_chunks);

    auto body = [&](std::uint64_t u, Sums& sums) {
        RngStream rng = base.substream(u);
        const double theta = rng.inverse_gamma(pm.shape, pm.scale);
        const HcsSample sample = generate_hcs_sample(ExponentialModel{theta}, design, rng);
        const ActionProbabilities ap =
            estimate_action_probabilities(sample, bounds, wty, rng);
        const double moment = ExponentialModel{theta}.moment(mfr.q);
        double eq;
        {
            const double full = wty.cs + wty.cw;
            if (wty.w1 == wty.w2)
                eq = wty.w1 == 0.0 ? 0.0 : full * (-std::expm1(-wty.w1 / theta));
            else
                eq = full - full / (wty.w2 - wty.w1) * theta *
                                (std::exp(-wty.w1 / theta) - std::exp(-wty.w2 / theta));
        }
        const double psi1 = (ap.p1_awo + ap.p1_aw) * (mfr.b1 * moment - mfr.b2) +
                            ap.p1_aw * (wty.cw - eq) + ap.p1_r * mfr.b3 -
                            mfr.b5 * sample.d - mfr.b6 * sample.eta;
        const double lw = ap.p1_aw * (eq - wty.cw);
        sums.psi += psi1;
        sums.psi2 += psi1 * psi1;
        sums.p1 += ap.p1_awo;
        sums.p1sq += ap.p1_awo * ap.p1_awo;
        sums.p2 += ap.p1_aw;
        sums.p2sq += ap.p1_aw * ap.p1_aw;
        sums.p3 += ap.p1_r;
        sums.p3sq += ap.p1_r * ap.p1_r;
        sums.d += sample.d;
        sums.d2 += static_cast<double>(sample.d) * sample.d;
        sums.eta += sample.eta;
        sums.eta2 += sample.eta * sample.eta;
        sums.lw += lw;
        sums.lw2 += lw * lw;
    };

    unsigned width = cfg.parallel_width;
    if (width == 0) width = std::max(1u, std::thread::hardware_concurrency());
    width = static_cast<unsigned>(std::min<std::uint64_t>(width, n_chunks));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            Sums sums;
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
        for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    Sums tot;
    for (const auto& p : partials) {
        tot.psi += p.psi; tot.psi2 += p.psi2;
        tot.p1 += p.p1; tot.p1sq += p.p1sq;
        tot.p2 += p.p2; tot.p2sq += p.p2sq;
        tot.p3 += p.p3; tot.p3sq += p.p3sq;
        tot.d += p.d; tot.d2 += p.d2;
        tot.eta += p.eta; tot.eta2 += p.eta2;
        tot.lw += p.lw; tot.lw2 += p.lw2;
    }
    const double m = static_cast<double>(s1);
    auto mean_se = [&](double sum, double sumsq) {
        const double mean = sum / m;
        const double var = std::max(0.0, sumsq / m - mean * mean);
        return std::pair<double, double>{mean, std::sqrt(var / m)};
    };
    PlanEvaluation ev;
    const auto [psi_m, psi_s] = mean_se(tot.psi, tot.psi2);
    ev.psi = -mfr.b4 * design.n + psi_m;
    ev.psi_se = psi_s;
    std::tie(ev.p_awo, ev.p_awo_se) = mean_se(tot.p1, tot.p1sq);
    std::tie(ev.p_aw, ev.p_aw_se) = mean_se(tot.p2, tot.p2sq);
    std::tie(ev.p_r, ev.p_r_se) = mean_se(tot.p3, tot.p3sq);
    std::tie(ev.e_d, ev.e_d_se) = mean_se(tot.d, tot.d2);
    std::tie(ev.e_eta, ev.e_eta_se) = mean_se(tot.eta, tot.eta2);
    std::tie(ev.l_w, ev.l_w_se) = mean_se(tot.lw, tot.lw2);
    return ev;
}

} // namespace rasp
