#pragma once

#include <cstdint>

namespace honeyeco {

/// One output step of the splitmix64 sequence, usable standalone as a seed mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// splitmix64 stream. Trial streams are seeded as splitmix64(seed + trial_index),
/// so each trial's sequence depends only on (seed, trial_index) and never on how
/// trials are scheduled across threads.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    static constexpr SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial_index) noexcept {
        return SplitMix64(splitmix64(seed + trial_index));
    }

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    constexpr double next_unit() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// One draw is consumed regardless of p, so draw sequences stay aligned.
    /// p <= 0 is always false, p >= 1 is always true.
    constexpr bool bernoulli(double p) noexcept { return next_unit() < p; }

private:
    std::uint64_t state_;
};

} // namespace honeyeco
