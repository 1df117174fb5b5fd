#pragma once

#include <string>

#include "rasp/censoring.hpp"
#include "rasp/optimizer.hpp"
#include "rasp/types.hpp"

namespace rasp {

// Strict JSON loaders: every type invariant is validated and unknown keys
// are rejected with the offending key named.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);

HcsSample load_hcs_sample(const std::string& path);
HcsSample parse_hcs_sample(const std::string& json_text);
std::string hcs_sample_to_json(const HcsSample& sample);

std::string plan_evaluation_to_json(const Design& design, const PlanEvaluation& ev);
std::string decision_outcome_to_json(const DecisionOutcome& outcome);
std::string optimize_result_to_json(const OptimizeResult& result);

// CSV row shaped like the reported tables:
// n,r,t0,psi,p_awo,p_aw,p_r,e_d,e_eta,l_w
std::string plan_evaluation_csv_header();
std::string plan_evaluation_csv_row(const Design& design, const PlanEvaluation& ev);

} // namespace rasp
