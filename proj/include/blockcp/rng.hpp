#pragma once

// Reproducible random streams.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard. Seeding: every (seed, stream) pair is mixed through two rounds
// of SplitMix64 so that replication r of a campaign always sees the same
// substream regardless of scheduling. Continuous variates are produced by
// explicit transforms below instead of <random> distributions, which are
// implementation-defined and would differ between standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace blockcp {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller: each pair of uniforms yields a cosine
    /// and a sine variate, returned on consecutive calls.
    double standard_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
        const double angle = 2.0 * std::numbers::pi * uniform_open();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform integer in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = max() - (max() % bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace blockcp
