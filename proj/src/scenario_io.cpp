#include "rasp/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rasp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("scenario_io: " + msg);
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
    if (!obj.is_object()) fail(where + " must be a JSON object");
    for (const char* k : required)
        if (!obj.contains(k)) fail(where + ": missing key \"" + k + "\"");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string& k = it.key();
        const bool known =
            std::any_of(required.begin(), required.end(), [&](const char* r) { return k == r; }) ||
            std::any_of(optional.begin(), optional.end(), [&](const char* o) { return k == o; });
        if (!known) fail(where + ": unknown key \"" + k + "\"");
    }
}

double num(const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(where + ": \"" + std::string(key) + "\" must be a number");
    return v.get<double>();
}

std::pair<double, double> bound_pair(const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(where + ": \"" + std::string(key) + "\" must be [lo, hi]");
    return {v[0].get<double>(), v[1].get<double>()};
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail(path + ": " + e.what());
    }
    return j;
}

GammaHyper parse_gamma_hyper(const json& j, const std::string& where) {
    require_keys(j, where, {"shape", "rate"});
    GammaHyper g{num(j, "shape", where), num(j, "rate", where)};
    g.validate();
    return g;
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("parse error: ") + e.what());
    }
    require_keys(j, "scenario", {"model", "consumer", "manufacturer", "warranty", "priors"},
                 {"rdsp"});

    Scenario sc;
    const std::string model = j.at("model").get<std::string>();
    if (model == "exponential")
        sc.model = ModelKind::Exponential;
    else if (model == "weibull")
        sc.model = ModelKind::Weibull;
    else
        fail("model must be \"exponential\" or \"weibull\"");

    {
        const auto& c = j.at("consumer");
        require_keys(c, "consumer", {"a1", "a2", "a3", "L"});
        sc.consumer = {num(c, "a1", "consumer"), num(c, "a2", "consumer"),
                       num(c, "a3", "consumer"), num(c, "L", "consumer")};
    }
    {
        const auto& m = j.at("manufacturer");
        require_keys(m, "manufacturer", {"b1", "b2", "b3", "b4", "b5", "b6", "q"});
        sc.manufacturer = {num(m, "b1", "manufacturer"), num(m, "b2", "manufacturer"),
                           num(m, "b3", "manufacturer"), num(m, "b4", "manufacturer"),
                           num(m, "b5", "manufacturer"), num(m, "b6", "manufacturer"),
                           num(m, "q", "manufacturer")};
    }
    {
        const auto& w = j.at("warranty");
        require_keys(w, "warranty", {"w1", "w2", "cs", "cw"}, {"cm"});
        sc.warranty = {num(w, "w1", "warranty"), num(w, "w2", "warranty"),
                       num(w, "cs", "warranty"), num(w, "cw", "warranty"),
                       w.contains("cm") ? num(w, "cm", "warranty") : 0.0};
    }
    {
        const auto& p = j.at("priors");
        require_keys(p, "priors", {"consumer", "manufacturer"});
        if (sc.model == ModelKind::Exponential) {
            auto parse_ig = [&](const json& q, const std::string& where) {
                require_keys(q, where, {"alpha", "beta"});
                InverseGammaPrior ig{num(q, "alpha", where), num(q, "beta", where)};
                ig.validate();
                return ig;
            };
            sc.priors = ExpPriors{parse_ig(p.at("consumer"), "priors.consumer"),
                                  parse_ig(p.at("manufacturer"), "priors.manufacturer")};
        } else {
            auto parse_pair = [&](const json& q, const std::string& where) {
                require_keys(q, where, {"shape", "rate"});
                return WeibullPriorPair{parse_gamma_hyper(q.at("shape"), where + ".shape"),
                                        parse_gamma_hyper(q.at("rate"), where + ".rate")};
            };
            sc.priors = WeibullPriors{parse_pair(p.at("consumer"), "priors.consumer"),
                                      parse_pair(p.at("manufacturer"), "priors.manufacturer")};
        }
    }
    if (j.contains("rdsp")) {
        const auto& r = j.at("rdsp");
        require_keys(r, "rdsp", {"a1", "a2", "a3", "L", "alpha1", "beta1", "K"});
        RdspBounds b;
        std::tie(b.a1_lo, b.a1_hi) = bound_pair(r, "a1", "rdsp");
        std::tie(b.a2_lo, b.a2_hi) = bound_pair(r, "a2", "rdsp");
        std::tie(b.a3_lo, b.a3_hi) = bound_pair(r, "a3", "rdsp");
        std::tie(b.min_life_lo, b.min_life_hi) = bound_pair(r, "L", "rdsp");
        std::tie(b.alpha1_lo, b.alpha1_hi) = bound_pair(r, "alpha1", "rdsp");
        std::tie(b.beta1_lo, b.beta1_hi) = bound_pair(r, "beta1", "rdsp");
        if (!r.at("K").is_number_integer()) fail("rdsp: \"K\" must be an integer");
        b.k = r.at("K").get<int>();
        sc.rdsp = b;
    }
    sc.validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    return parse_scenario(read_file(path).dump());
}

HcsSample parse_hcs_sample(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("parse error: ") + e.what());
    }
    require_keys(j, "sample", {"failures", "d", "eta", "n", "r", "t0"});
    HcsSample s;
    s.design.n = j.at("n").get<int>();
    s.design.r = j.at("r").get<int>();
    s.design.t0 = num(j, "t0", "sample");
    if (!j.at("failures").is_array()) fail("sample: \"failures\" must be an array");
    for (const auto& x : j.at("failures")) s.failures.push_back(x.get<double>());
    s.d = j.at("d").get<int>();
    s.eta = num(j, "eta", "sample");
    s.v = v_statistic(s.failures, s.d, s.design);
    s.validate();
    return s;
}

HcsSample load_hcs_sample(const std::string& path) {
    return parse_hcs_sample(read_file(path).dump());
}

std::string hcs_sample_to_json(const HcsSample& sample) {
    json j;
    j["failures"] = sample.failures;
    j["d"] = sample.d;
    j["eta"] = sample.eta;
    j["n"] = sample.design.n;
    j["r"] = sample.design.r;
    j["t0"] = sample.design.t0;
    return j.dump();
}

namespace {

json eval_to_json_obj(const Design& design, const PlanEvaluation& ev) {
    json j;
    j["design"] = {{"n", design.n}, {"r", design.r}, {"t0", design.t0}};
    j["psi"] = ev.psi;
    j["p_awo"] = ev.p_awo;
    j["p_aw"] = ev.p_aw;
    j["p_r"] = ev.p_r;
    j["e_d"] = ev.e_d;
    j["e_eta"] = ev.e_eta;
    j["l_w"] = ev.l_w;
    if (ev.psi_se) {
        j["se"] = {{"psi", *ev.psi_se},   {"p_awo", *ev.p_awo_se}, {"p_aw", *ev.p_aw_se},
                   {"p_r", *ev.p_r_se},   {"e_d", *ev.e_d_se},     {"e_eta", *ev.e_eta_se},
                   {"l_w", *ev.l_w_se}};
    }
    return j;
}

} // namespace

std::string plan_evaluation_to_json(const Design& design, const PlanEvaluation& ev) {
    return eval_to_json_obj(design, ev).dump(2);
}

std::string decision_outcome_to_json(const DecisionOutcome& outcome) {
    json j;
    j["action"] = to_string(outcome.action);
    j["stage"] = to_string(outcome.stage);
    j["e1"] = outcome.e1 ? json(*outcome.e1) : json(nullptr);
    j["e2"] = outcome.e2 ? json(*outcome.e2) : json(nullptr);
    return j.dump(2);
}

std::string optimize_result_to_json(const OptimizeResult& result) {
    json j = eval_to_json_obj(result.best, result.eval);
    j["baselines"] = {{"accept_no_warranty", result.baselines.accept_no_warranty},
                      {"accept_with_warranty", result.baselines.accept_with_warranty},
                      {"reject", result.baselines.reject}};
    j["pretest_action"] = to_string(result.pretest.action);
    if (result.no_test_action) j["no_test_action"] = to_string(*result.no_test_action);
    return j.dump(2);
}

std::string plan_evaluation_csv_header() {
    return "n,r,t0,psi,p_awo,p_aw,p_r,e_d,e_eta,l_w";
}

std::string plan_evaluation_csv_row(const Design& design, const PlanEvaluation& ev) {
    std::ostringstream os;
    os.precision(10);
    os << design.n << ',' << design.r << ',' << design.t0 << ',' << ev.psi << ',' << ev.p_awo
       << ',' << ev.p_aw << ',' << ev.p_r << ',' << ev.e_d << ',' << ev.e_eta << ',' << ev.l_w;
    return os.str();
}

} // namespace rasp
