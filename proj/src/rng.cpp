#include "rasp/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rasp {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    init_state();
}

void RngStream::init_state() {
    // Scramble (seed, stream_id) into four nonzero state words.
    std::uint64_t x = seed_;
    (void)splitmix64(x);
    x ^= 0x5851f42d4c957f2dull * (stream_id_ + 1);
    for (auto& s : state_) s = splitmix64(x);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RngStream::normal() {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    // Marsaglia polar method.
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    has_spare_normal_ = true;
    return u * f;
}

double RngStream::exponential(double mean) {
    if (mean <= 0.0) throw std::domain_error("RngStream::exponential: mean must be positive");
    return -mean * std::log(uniform());
}

double RngStream::gamma(double shape, double rate) {
    if (shape <= 0.0 || rate <= 0.0)
        throw std::domain_error("RngStream::gamma: shape and rate must be positive");
    if (shape < 1.0) {
        // Boost by one and correct with a power of a uniform.
        const double g = gamma(shape + 1.0, 1.0);
        return g * std::pow(uniform(), 1.0 / shape) / rate;
    }
    // Marsaglia-Tsang squeeze method.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

double RngStream::inverse_gamma(double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0)
        throw std::domain_error("RngStream::inverse_gamma: shape and scale must be positive");
    return 1.0 / gamma(shape, scale);
}

double RngStream::weibull(double shape, double rate) {
    if (shape <= 0.0 || rate <= 0.0)
        throw std::domain_error("RngStream::weibull: shape and rate must be positive");
    return std::pow(-std::log(uniform()) / rate, 1.0 / shape);
}

RngStream RngStream::substream(std::uint64_t id) const {
    std::uint64_t x = stream_id_;
    (void)splitmix64(x);
    x ^= 0x9e3779b97f4a7c15ull * (id + 1);
    return RngStream(seed_, splitmix64(x));
}

} // namespace rasp
