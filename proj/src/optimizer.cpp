#include "rasp/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "rasp/decision.hpp"
#include "rasp/rdsp.hpp"

namespace rasp {

const char* to_string(Engine e) {
    switch (e) {
        case Engine::Exact: return "exact";
        case Engine::Mc: return "mc";
        case Engine::Rdsp: return "rdsp";
    }
    return "unknown";
}

namespace {

bool better(const Design& a, double psi_a, const Design& b, double psi_b) {
    if (psi_a != psi_b) return psi_a > psi_b;
    if (a.n != b.n) return a.n < b.n;
    if (a.r != b.r) return a.r < b.r;
    return a.t0 < b.t0;
}

struct Evaluator {
    const Scenario& scenario;
    Engine engine;
    McConfig cfg;

    PlanEvaluation operator()(const Design& d) const {
        switch (engine) {
            case Engine::Exact: return evaluate_plan_exp(d, scenario);
            case Engine::Mc: return evaluate_plan_mc(d, scenario, cfg);
            case Engine::Rdsp: return evaluate_plan_rdsp(d, scenario, cfg);
        }
        throw std::logic_error("optimize: unknown engine");
    }
};

} // namespace

OptimizeResult optimize(const Scenario& scenario, const SearchSpace& space,
                        const McConfig& cfg) {
    scenario.validate();
    space.validate();
    OptimizeResult out;
    out.baselines = baseline_utilities(scenario);

    // Stage 0: the consumer may settle the negotiation before any test.
    // RDSP consumers are random, so the pre-test stage is resolved per draw
    // inside the engine instead.
    if (space.engine != Engine::Rdsp) {
        PretestValues pv;
        if (scenario.model == ModelKind::Exponential)
            pv = pretest_values_exp(scenario.consumer, scenario.warranty,
                                    scenario.exp_priors().consumer);
        else
            pv = pretest_values_weibull(scenario.consumer, scenario.warranty,
                                        scenario.weibull_priors().consumer);
        out.pretest = pretest_decision(scenario.consumer, scenario.warranty, pv);
        if (out.pretest.action == Action::AcceptNoWarranty) {
            out.best = Design{0, 0, 0.0};
            out.no_test_action = Action::AcceptNoWarranty;
            out.eval.psi = out.baselines.accept_no_warranty;
            out.eval.p_awo = 1.0;
            return out;
        }
        if (out.pretest.action == Action::AcceptWithWarranty) {
            out.best = Design{0, 0, 0.0};
            out.no_test_action = Action::AcceptWithWarranty;
            out.eval.psi = out.baselines.accept_with_warranty;
            out.eval.p_aw = 1.0;
            // The expected net warranty loss at the pre-test acceptance.
            out.eval.l_w = pv.expected_rebate - scenario.warranty.cw;
            return out;
        }
    } else {
        out.pretest.action = Action::Reject;
        out.pretest.stage = Stage::PreTest;
    }

    const Evaluator full{scenario, space.engine, cfg};
    Evaluator screen = full;
    const bool stochastic = space.engine != Engine::Exact;
    if (stochastic) screen.cfg.s1 = std::max<std::uint64_t>(cfg.s1 / 10, 1000);

    // Coarse pass over every (n, r) pair and T0 grid point.
    struct Cell {
        Design design;
        double psi;
        int t_index;
    };
    std::vector<Cell> cells;
    const double dt = (space.t_max - space.t_min) / (space.coarse_steps - 1);
    for (int n = 1; n <= space.n_max; ++n) {
        for (int r = 1; r <= n; ++r) {
            for (int j = 0; j < space.coarse_steps; ++j) {
                const Design d{n, r, space.t_min + j * dt};
                const PlanEvaluation ev = screen(d);
                out.trace.push_back({d, ev});
                cells.push_back({d, ev.psi, j});
            }
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return better(a.design, a.psi, b.design, b.psi);
    });

    // Refinement: golden-section over the best coarse cell and its two
    // neighbours (psi need not be unimodal globally, but the bracket is
    // local). Stochastic engines refine only the screened top 10 at the
    // full budget; the exact engine refines the best cell per (n, r) pair.
    std::vector<Cell> candidates;
    if (stochastic) {
        for (std::size_t i = 0; i < cells.size() && candidates.size() < 10; ++i) {
            const bool dup = std::any_of(candidates.begin(), candidates.end(), [&](const Cell& c) {
                return c.design.n == cells[i].design.n && c.design.r == cells[i].design.r;
            });
            if (!dup) candidates.push_back(cells[i]);
        }
    } else {
        // best T0 cell for each (n, r)
        std::vector<char> seen(static_cast<std::size_t>(space.n_max + 1) * (space.n_max + 1), 0);
        for (const Cell& c : cells) {
            auto& flag = seen[static_cast<std::size_t>(c.design.n) * (space.n_max + 1) + c.design.r];
            if (!flag) {
                flag = 1;
                candidates.push_back(c);
            }
        }
    }

    bool have_best = false;
    Design best_design;
    PlanEvaluation best_eval;
    auto consider = [&](const Design& d, const PlanEvaluation& ev) {
        if (!have_best || better(d, ev.psi, best_design, best_eval.psi)) {
            have_best = true;
            best_design = d;
            best_eval = ev;
        }
    };

    constexpr double kGolden = 0.6180339887498949;
    for (const Cell& cell : candidates) {
        const int n = cell.design.n, r = cell.design.r;
        double lo = std::max(space.t_min, cell.design.t0 - dt);
        double hi = std::min(space.t_max, cell.design.t0 + dt);
        {
            const PlanEvaluation ev = full(cell.design);
            out.trace.push_back({cell.design, ev});
            consider(cell.design, ev);
        }
        if (space.refine_iters == 0) continue;
        double x1 = hi - kGolden * (hi - lo);
        double x2 = lo + kGolden * (hi - lo);
        Design d1{n, r, x1}, d2{n, r, x2};
        PlanEvaluation e1 = full(d1), e2 = full(d2);
        out.trace.push_back({d1, e1});
        out.trace.push_back({d2, e2});
        consider(d1, e1);
        consider(d2, e2);
        for (int it = 0; it < space.refine_iters; ++it) {
            if (e1.psi >= e2.psi) {
                hi = x2;
                x2 = x1;
                e2 = e1;
                x1 = hi - kGolden * (hi - lo);
                d1 = Design{n, r, x1};
                e1 = full(d1);
                out.trace.push_back({d1, e1});
                consider(d1, e1);
            } else {
                lo = x1;
                x1 = x2;
                e1 = e2;
                x2 = lo + kGolden * (hi - lo);
                d2 = Design{n, r, x2};
                e2 = full(d2);
                out.trace.push_back({d2, e2});
                consider(d2, e2);
            }
            if (hi - lo < 1e-10 * space.t_max) break;
        }
    }

    // A lot rejected without testing is worth b3; prefer it when no plan
    // beats that baseline.
    if (!have_best || best_eval.psi < out.baselines.reject) {
        out.best = Design{0, 0, 0.0};
        out.no_test_action = Action::Reject;
        out.eval = PlanEvaluation{};
        out.eval.psi = out.baselines.reject;
        out.eval.p_r = 1.0;
        return out;
    }
    out.best = best_design;
    out.eval = best_eval;
    return out;
}

} // namespace rasp
