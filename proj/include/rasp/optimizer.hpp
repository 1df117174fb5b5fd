#pragma once

#include <optional>
#include <vector>

#include "rasp/plan_eval_exact.hpp"
#include "rasp/plan_eval_mc.hpp"
#include "rasp/types.hpp"

namespace rasp {

enum class Engine { Exact, Mc, Rdsp };

const char* to_string(Engine e);

struct SearchSpace {
    int n_max = 12;
    double t_min = 0.0;
    double t_max = 0.0;
    int coarse_steps = 48;
    int refine_iters = 30;
    Engine engine = Engine::Exact;

    void validate() const {
        if (n_max < 1 || !(t_min > 0.0) || !(t_max > t_min) || coarse_steps < 2 ||
            refine_iters < 0)
            throw std::invalid_argument("SearchSpace: invalid search space");
    }
};

struct TraceRow {
    Design design;
    PlanEvaluation eval;
};

struct OptimizeResult {
    Design best;                 // (0,0,0) when no test should be run
    PlanEvaluation eval;
    BaselineUtilities baselines;
    DecisionOutcome pretest;     // the consumer's pre-test decision
    std::optional<Action> no_test_action;  // set when best = (0,0,0)
    std::vector<TraceRow> trace;
};

// Exhaustive search over n = 1..n_max, r = 1..n, a coarse T0 grid, then a
// bracketing golden-section refinement around the best coarse cell. Returns
// (0,0,0) when the consumer already accepts at the pre-test stage (the
// matching no-test baseline is the utility) or when rejecting without a
// test (b3) beats every plan. Ties break toward smaller n, then r, then T0.
// MC and RDSP engines use common random numbers (same seed per replicate
// index across designs) and a two-stage budget: a screening pass at reduced
// s1 followed by full-budget re-evaluation of the 10 best candidates.
OptimizeResult optimize(const Scenario& scenario, const SearchSpace& space,
                        const McConfig& cfg);

} // namespace rasp
