#pragma once

#include "rasp/censoring.hpp"
#include "rasp/plan_eval_mc.hpp"
#include "rasp/types.hpp"

namespace rasp {

// Action probabilities of the random consumer for one fixed data set:
// pre-test rates and post-test rates conditional on pre-test rejection.
struct ActionProbabilities {
    double p0_awo = 0.0, p0_aw = 0.0, p0_r = 0.0;
    double p1_awo = 0.0, p1_aw = 0.0, p1_r = 0.0;
    bool p1_defined = true;  // false when no draw reached the test stage
};

// K draws of (a1, a2, a3, L, alpha1, beta1) from independent uniforms;
// each draw walks the full staged decision against the fixed sample.
// If no draw rejects at the pre-test stage the conditional triple is
// reported as (0, 0, 1) with p1_defined = false.
ActionProbabilities estimate_action_probabilities(const HcsSample& sample,
                                                  const RdspBounds& bounds,
                                                  const WarrantyPolicy& policy,
                                                  RngStream& rng);

// RDSP pre-posterior utility: as evaluate_plan_mc but each replicate's
// utility is the mixture over the three actions weighted by that sample's
// conditional post-test probabilities. The returned probability fields are
// the replicate averages of the conditional triple (the pre-test triple is
// available through estimate_action_probabilities).
PlanEvaluation evaluate_plan_rdsp(const Design& design, const Scenario& scenario,
                                  const McConfig& cfg);

} // namespace rasp
