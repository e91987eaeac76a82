#pragma once

#include <cstdint>

namespace tgvr {

/// SplitMix64: 64-bit counter-based generator (Steele, Lea & Flood mixing
/// constants). Pure integer arithmetic, so streams reproduce across
/// platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// SplitMix64 finalizer as a standalone hash.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Independent per-pixel stream: SplitMix64 seeded by hashing (seed, index).
SplitMix64 stream_for_index(std::uint64_t seed, std::uint64_t index) noexcept;

/// One Poisson draw with the given mean. Inversion by sequential search for
/// means below 10, Hormann's transformed rejection with squeeze above.
long poisson_sample(double mean, SplitMix64& rng);

} // namespace tgvr
