#include "tgvr/degrade.hpp"

#include <stdexcept>

#include "tgvr/grid_ops.hpp"
#include "tgvr/rng.hpp"

namespace tgvr {

ImageGrid scale_activity(const ImageGrid& u0, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("scale_activity: beta must be positive");
    return scaled(u0, beta);
}

ImageGrid poisson_corrupt(const ImageGrid& means, std::uint64_t seed) {
    if (min_value(means) < 0.0) {
        throw std::invalid_argument("poisson_corrupt: negative means");
    }
    ImageGrid out(means.width(), means.height());
    for (std::size_t i = 0; i < means.size(); ++i) {
        if (means[i] == 0.0) {
            out[i] = 0.0;
            continue;
        }
        SplitMix64 rng = stream_for_index(seed, i);
        out[i] = static_cast<double>(poisson_sample(means[i], rng));
    }
    return out;
}

Degraded degrade(const ImageGrid& u0, const DegradationSpec& spec) {
    if (min_value(u0) < 0.0) throw std::invalid_argument("degrade: ground truth must be nonnegative");
    BlurKernel kernel = BlurKernel::gaussian(spec.psf_sigma);
    ImageGrid blurred = convolve(scale_activity(u0, spec.beta), kernel, PaddingMode::Replicate);
    // The transform can leave round-off dust of either sign where the true
    // mean is zero; snap it before sampling.
    for (std::size_t i = 0; i < blurred.size(); ++i) {
        if (blurred[i] < 0.0) {
            if (blurred[i] < -1e-9 * spec.beta) {
                throw std::invalid_argument("degrade: blur produced a significantly negative mean");
            }
            blurred[i] = 0.0;
        }
    }
    return Degraded{poisson_corrupt(blurred, spec.rng_seed), std::move(kernel)};
}

} // namespace tgvr
