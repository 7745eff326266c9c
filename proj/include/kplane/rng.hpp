#pragma once

#include <cmath>
#include <cstdint>

namespace kplane {

// Counter-based splittable random stream (splitmix64 core). Every consumer
// derives its own child stream from (seed, stream id), so results do not
// depend on evaluation order or on how work is distributed across workers.
// The seed travels with every report for bit-for-bit replay.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), counter_(0) {}

    // Deterministic child stream; independent of how many draws were consumed.
    RngStream split(std::uint64_t stream_id) const {
        return RngStream(mix(seed_ + kGolden * (stream_id + 1)));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return mix(seed_ + kGolden * ++counter_); }

    // Uniform on (0,1), never exactly 0 or 1.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (self-contained: identical sequences on
    // every platform, unlike std::normal_distribution).
    double normal() {
        const double u = uniform();
        const double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    static constexpr double kTwoPi = 6.283185307179586476925286766559;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace kplane
