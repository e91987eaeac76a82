#include "tgvr/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace tgvr {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

SplitMix64 stream_for_index(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(mix64(seed ^ mix64(index * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull)));
}

namespace {

long poisson_inversion(double mean, SplitMix64& rng) {
    // Sequential search over the CDF; safe in double for mean < 10.
    const double u = rng.next_double();
    double p = std::exp(-mean);
    double cum = p;
    long k = 0;
    while (u > cum) {
        ++k;
        p *= mean / static_cast<double>(k);
        cum += p;
        if (k > 2000) break;  // unreachable for mean < 10; guards round-off
    }
    return k;
}

long poisson_ptrs(double mean, SplitMix64& rng) {
    // Hormann's PTRS transformed rejection, valid for mean >= 10.
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::abs(u);
        const long k = static_cast<long>(std::floor((2.0 * a / us + b) * u + mean + 0.43));
        if (us >= 0.07 && v <= vr) return k;
        if (k < 0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * invalpha / (a / (us * us) + b)) <=
            -mean + k * loglam - std::lgamma(static_cast<double>(k) + 1.0)) {
            return k;
        }
    }
}

} // namespace

long poisson_sample(double mean, SplitMix64& rng) {
    if (!(mean >= 0.0)) {
        throw std::invalid_argument("poisson_sample: mean must be nonnegative");
    }
    if (mean == 0.0) return 0;
    if (mean < 10.0) return poisson_inversion(mean, rng);
    return poisson_ptrs(mean, rng);
}

} // namespace tgvr
