#include "rasp/types.hpp"

namespace rasp {

const char* to_string(Action a) {
    switch (a) {
        case Action::AcceptNoWarranty: return "accept_no_warranty";
        case Action::AcceptWithWarranty: return "accept_with_warranty";
        case Action::Reject: return "reject";
    }
    return "unknown";
}

const char* to_string(Stage s) {
    switch (s) {
        case Stage::PreTest: return "pre_test";
        case Stage::PostTest: return "post_test";
    }
    return "unknown";
}

void Scenario::validate() const {
    consumer.validate();
    manufacturer.validate();
    warranty.validate();
    if (model == ModelKind::Exponential) {
        const auto& p = std::get<ExpPriors>(priors);
        p.consumer.validate();
        p.manufacturer.validate();
        if (!(p.consumer.shape > 1.0))
            throw std::invalid_argument("Scenario: consumer prior shape must exceed 1");
        if (!(p.manufacturer.shape > manufacturer.q))
            throw std::invalid_argument("Scenario: manufacturer prior shape must exceed q");
    } else {
        const auto& p = std::get<WeibullPriors>(priors);
        p.consumer.validate();
        p.manufacturer.validate();
    }
    if (rdsp) rdsp->validate();
}

} // namespace rasp
