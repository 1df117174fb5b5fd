#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace rasp {

// Life-test plan: n units on test, stop at the r-th failure or at time T0,
// whichever comes first. (0,0,0) encodes "no life test".
struct Design {
    int n = 0;
    int r = 0;
    double t0 = 0.0;

    bool is_no_test() const { return n == 0 && r == 0 && t0 == 0.0; }

    void validate() const {
        if (n < 0 || r < 0 || r > n || t0 < 0.0)
            throw std::invalid_argument("Design: requires 0 <= r <= n and T0 >= 0");
    }
};

struct ConsumerProfile {
    double a1 = 0.0;   // proportional loss for failure before L
    double a2 = 0.0;   // fixed cost of accepting
    double a3 = 0.0;   // loss of rejecting
    double min_life = 0.0;  // required minimum lifetime L

    void validate() const {
        if (!(a1 > 0.0) || !(min_life > 0.0))
            throw std::invalid_argument("ConsumerProfile: requires a1 > 0 and L > 0");
    }
};

// Combined FRW-PRW rebate policy: full refund of (cs+cw) on [0,w1),
// pro-rata on [w1,w2), nothing after w2. w1 == w2 degenerates to pure FRW.
struct WarrantyPolicy {
    double w1 = 0.0;
    double w2 = 0.0;
    double cs = 0.0;   // selling price
    double cw = 0.0;   // warranty price
    double cm = 0.0;   // unit supply cost; carried but unused by the utilities

    void validate() const {
        if (w1 < 0.0 || w2 < w1 || cs < 0.0 || cw < 0.0)
            throw std::invalid_argument("WarrantyPolicy: requires 0 <= w1 <= w2 and cs, cw >= 0");
    }
};

struct ManufacturerProfile {
    double b1 = 0.0;   // profit rate per unit lifetime^q
    double b2 = 0.0;   // fixed cost when the lot is accepted
    double b3 = 0.0;   // utility of rejection
    double b4 = 0.0;   // cost per unit on test
    double b5 = 0.0;   // cost per failure
    double b6 = 0.0;   // cost per unit test time
    double q = 1.0;    // risk exponent

    void validate() const {
        if (!(b1 > 0.0) || !(q > 0.0))
            throw std::invalid_argument("ManufacturerProfile: requires b1 > 0 and q > 0");
    }
};

// Inverse-gamma prior on the exponential mean theta.
struct InverseGammaPrior {
    double shape = 0.0;  // alpha
    double scale = 0.0;  // beta

    void validate() const {
        if (!(shape > 0.0) || !(scale > 0.0))
            throw std::invalid_argument("InverseGammaPrior: shape and scale must be positive");
    }
};

struct GammaHyper {
    double shape = 0.0;
    double rate = 0.0;

    void validate() const {
        if (!(shape > 0.0) || !(rate > 0.0))
            throw std::invalid_argument("GammaHyper: shape and rate must be positive");
    }
    double mean() const { return shape / rate; }
};

// Independent gamma priors on the Weibull shape alpha and rate lambda.
struct WeibullPriorPair {
    GammaHyper shape_hyper;  // prior on alpha
    GammaHyper rate_hyper;   // prior on lambda

    void validate() const {
        shape_hyper.validate();
        rate_hyper.validate();
    }
};

enum class Action { AcceptNoWarranty, AcceptWithWarranty, Reject };
enum class Stage { PreTest, PostTest };

const char* to_string(Action a);
const char* to_string(Stage s);

struct DecisionOutcome {
    Action action = Action::Reject;
    Stage stage = Stage::PreTest;
    // Post-test margins: e1 = posterior acceptance value - a3,
    // e2 = e1 - (posterior expected rebate - cw). Empty at the pre-test stage.
    std::optional<double> e1;
    std::optional<double> e2;
};

// Per-parameter uniform bounds for the random consumer of the RDSP scheme.
struct RdspBounds {
    double a1_lo = 0.0, a1_hi = 0.0;
    double a2_lo = 0.0, a2_hi = 0.0;
    double a3_lo = 0.0, a3_hi = 0.0;
    double min_life_lo = 0.0, min_life_hi = 0.0;
    double alpha1_lo = 0.0, alpha1_hi = 0.0;
    double beta1_lo = 0.0, beta1_hi = 0.0;
    int k = 0;  // draws per data set

    void validate() const {
        auto ordered = [](double lo, double hi) { return lo <= hi; };
        if (!ordered(a1_lo, a1_hi) || !ordered(a2_lo, a2_hi) || !ordered(a3_lo, a3_hi) ||
            !ordered(min_life_lo, min_life_hi) || !ordered(alpha1_lo, alpha1_hi) ||
            !ordered(beta1_lo, beta1_hi))
            throw std::invalid_argument("RdspBounds: each bound pair must satisfy lo <= hi");
        if (!(a1_lo > 0.0) || !(alpha1_lo > 0.0) || !(beta1_lo > 0.0) || !(min_life_lo > 0.0))
            throw std::invalid_argument("RdspBounds: a1, L, alpha1, beta1 bounds must be positive");
        if (k < 1) throw std::invalid_argument("RdspBounds: K must be >= 1");
    }
};

enum class ModelKind { Exponential, Weibull };

struct ExpPriors {
    InverseGammaPrior consumer;
    InverseGammaPrior manufacturer;
};

struct WeibullPriors {
    WeibullPriorPair consumer;
    WeibullPriorPair manufacturer;
};

// Parameter bundle for one negotiation: both parties' profiles, the
// warranty policy and the priors for one lifetime model.
struct Scenario {
    ModelKind model = ModelKind::Exponential;
    ConsumerProfile consumer;
    ManufacturerProfile manufacturer;
    WarrantyPolicy warranty;
    std::variant<ExpPriors, WeibullPriors> priors;
    std::optional<RdspBounds> rdsp;

    const ExpPriors& exp_priors() const {
        if (model != ModelKind::Exponential)
            throw std::logic_error("Scenario: not an exponential scenario");
        return std::get<ExpPriors>(priors);
    }
    const WeibullPriors& weibull_priors() const {
        if (model != ModelKind::Weibull)
            throw std::logic_error("Scenario: not a Weibull scenario");
        return std::get<WeibullPriors>(priors);
    }

    void validate() const;
};

struct FieldWithSe {
    double value = 0.0;
    double se = 0.0;
};

// psi plus its decomposition; MC engines also fill the standard errors.
struct PlanEvaluation {
    double psi = 0.0;
    double p_awo = 0.0;
    double p_aw = 0.0;
    double p_r = 0.0;
    double e_d = 0.0;
    double e_eta = 0.0;
    double l_w = 0.0;
    std::optional<double> psi_se, p_awo_se, p_aw_se, p_r_se, e_d_se, e_eta_se, l_w_se;
};

} // namespace rasp
