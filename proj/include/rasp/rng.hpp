#pragma once

#include <cstdint>

namespace rasp {

// Counter-seeded xoshiro256++ stream. A stream is fully determined by
// (seed, stream_id): the same pair always reproduces the same draw
// sequence, and distinct stream_ids give statistically independent
// sequences. Substreams derived with substream() inherit the seed and
// mix the child id into the stream id, so replicate k of a Monte Carlo
// run can be regenerated in isolation.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();

    // Uniform on the open interval (0,1).
    double uniform();
    double uniform(double lo, double hi);

    double normal();                                // standard normal
    double exponential(double mean);
    double gamma(double shape, double rate);        // density ~ y^{shape-1} e^{-rate y}
    double inverse_gamma(double shape, double scale); // density ~ t^{-shape-1} e^{-scale/t}
    double weibull(double shape, double rate);      // F(x) = 1 - exp(-rate x^shape)

    // Independent child stream; deterministic function of (seed, stream_id, id).
    RngStream substream(std::uint64_t id) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    std::uint64_t state_[4] = {};
    double spare_normal_ = 0.0;
    bool has_spare_normal_ = false;

    void init_state();
};

} // namespace rasp
