#include "rasp/censoring.hpp"

#include <algorithm>
#include <cmath>

namespace rasp {

void HcsSample::validate() const {
    design.validate();
    if (d != static_cast<int>(failures.size()) || d < 0 || d > design.r)
        throw std::invalid_argument("HcsSample: d must equal the failure count and satisfy 0 <= d <= r");
    if (!std::is_sorted(failures.begin(), failures.end()))
        throw std::invalid_argument("HcsSample: failure times must be nondecreasing");
    for (double x : failures)
        if (!(x > 0.0) || x > eta + 1e-12)
            throw std::invalid_argument("HcsSample: failure times must lie in (0, eta]");
    if (eta > design.t0 + 1e-12)
        throw std::invalid_argument("HcsSample: eta must not exceed T0");
    if (d < design.r && std::fabs(eta - design.t0) > 1e-12)
        throw std::invalid_argument("HcsSample: d < r requires eta = T0");
    const double vv = v_statistic(failures, d, design);
    if (std::fabs(vv - v) > 1e-9 * std::max(1.0, vv))
        throw std::invalid_argument("HcsSample: v inconsistent with failures");
    if (!(v > 0.0) || v > design.n * design.t0 + 1e-9)
        throw std::invalid_argument("HcsSample: v must lie in (0, n*T0]");
}

double v_statistic(const std::vector<double>& failures, int d, const Design& design) {
    design.validate();
    if (d != static_cast<int>(failures.size()) || d > design.r)
        throw std::invalid_argument("v_statistic: d must equal the failure count and be <= r");
    if (!std::is_sorted(failures.begin(), failures.end()))
        throw std::invalid_argument("v_statistic: failure times must be nondecreasing");
    if (d == 0) return design.n * design.t0;
    double sum = 0.0;
    for (double x : failures) sum += x;
    if (d < design.r) return sum + (design.n - d) * design.t0;
    return sum + (design.n - design.r) * failures.back();
}

HcsSample make_hcs_sample(const Design& design, std::vector<double> failures) {
    std::sort(failures.begin(), failures.end());
    HcsSample s;
    s.design = design;
    s.d = static_cast<int>(failures.size());
    s.failures = std::move(failures);
    s.eta = (s.d == design.r && s.d > 0) ? s.failures.back() : design.t0;
    s.v = v_statistic(s.failures, s.d, design);
    s.validate();
    return s;
}

double joint_density(double y, int d, double theta, const Design& design) {
    design.validate();
    if (!(theta > 0.0)) throw std::domain_error("joint_density: theta must be positive");
    if (d < 0 || d > design.r) throw std::invalid_argument("joint_density: d out of range");
    const int n = design.n, r = design.r;
    const double t0 = design.t0;
    const double nt0 = n * t0;
    const double rate = 1.0 / theta;

    if (d == 0)
        return (y == nt0) ? std::exp(-nt0 / theta) : 0.0;

    if (d < r) {
        // Support: sum of d failures in (0,T0] plus (n-d) T0.
        if (y <= (n - d) * t0 || y > nt0) return 0.0;
        double acc = 0.0, comp = 0.0;
        for (int i = 0; i <= d; ++i) {
            const double shift = (n - d + i) * t0;
            const double term = std::exp(log_binomial(d, i) - shift / theta) *
                                ((i % 2 == 0) ? 1.0 : -1.0) *
                                gamma_pdf(y - shift, d, rate);
            const double t = term - comp;
            const double s = acc + t;
            comp = (s - acc) - t;
            acc = s;
        }
        return std::max(0.0, std::exp(log_binomial(n, d)) * acc);
    }

    // d == r: all r failures before T0.
    if (y <= 0.0 || y >= nt0) return 0.0;
    double acc = gamma_pdf(y, r, rate), comp = 0.0;
    const double lead = r * std::exp(log_binomial(n, r));
    for (int k = 1; k <= r; ++k) {
        const double shift = (n - r + k) * t0;
        const double term = lead * ((k % 2 == 0) ? 1.0 : -1.0) / (n - r + k) *
                            std::exp(log_binomial(r - 1, k - 1) - shift / theta) *
                            gamma_pdf(y - shift, r, rate);
        const double t = term - comp;
        const double s = acc + t;
        comp = (s - acc) - t;
        acc = s;
    }
    return std::max(0.0, acc);
}

namespace {

// E_prior[e^{-m T0 / theta}] under theta ~ IG(alpha, beta).
inline double ig_laplace(const InverseGammaPrior& prior, double w) {
    return std::pow(prior.scale / (prior.scale + w), prior.shape);
}

} // namespace

double prior_expected_failures(const InverseGammaPrior& prior, const Design& design) {
    prior.validate();
    design.validate();
    if (design.n == 0 || design.t0 == 0.0) return 0.0;
    const int n = design.n, r = design.r;
    const double t0 = design.t0;
    // E_theta[E[D|theta]]: binomial terms expanded so the prior integrates
    // each e^{-(n-i)T0/theta} factor in closed form. Alternating series,
    // compensated accumulation.
    double acc = 0.0, comp = 0.0;
    auto add = [&](double term) {
        const double t = term - comp;
        const double s = acc + t;
        comp = (s - acc) - t;
        acc = s;
    };
    for (int j = 0; j <= n; ++j) {
        const double mult = (j < r) ? j : r;
        if (mult == 0.0) continue;
        for (int i = 0; i <= j; ++i) {
            const double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
            add(mult * sign * std::exp(log_binomial(n, j) + log_binomial(j, i)) *
                ig_laplace(prior, (n - i) * t0));
        }
    }
    return acc;
}

double prior_expected_duration(const InverseGammaPrior& prior, const Design& design) {
    prior.validate();
    design.validate();
    if (!(prior.shape > 1.0))
        throw std::domain_error("prior_expected_duration: diverges unless prior shape > 1");
    if (design.n == 0 || design.t0 == 0.0) return 0.0;
    const int n = design.n, r = design.r;
    const double t0 = design.t0;
    const double a = prior.shape, b = prior.scale;

    double p_ge_r = 0.0, comp = 0.0;  // P(at least r failures by T0), prior-averaged
    auto add = [&](double term) {
        const double t = term - comp;
        const double s = p_ge_r + t;
        comp = (s - p_ge_r) - t;
        p_ge_r = s;
    };
    for (int j = r; j <= n; ++j)
        for (int i = 0; i <= j; ++i)
            add((((j - i) % 2 == 0) ? 1.0 : -1.0) *
                std::exp(log_binomial(n, j) + log_binomial(j, i)) * ig_laplace(prior, (n - i) * t0));

    double tail = 0.0, comp2 = 0.0;  // E[x_(r); x_(r) <= T0], prior-averaged
    for (int i = 0; i < r; ++i) {
        const double m = n - i;
        const double sign = ((r - 1 - i) % 2 == 0) ? 1.0 : -1.0;
        const double term = sign * std::exp(log_binomial(r - 1, i)) / (m * m) *
                            (b / (a - 1.0) -
                             (a * t0 * m + b) / (a - 1.0) * ig_laplace(prior, m * t0));
        const double t = term - comp2;
        const double s = tail + t;
        comp2 = (s - tail) - t;
        tail = s;
    }
    tail *= r * std::exp(log_binomial(n, r));
    return t0 * (1.0 - p_ge_r) + tail;
}

} // namespace rasp
