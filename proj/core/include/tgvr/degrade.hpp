#pragma once

#include <cstdint>

#include "tgvr/blur_kernel.hpp"
#include "tgvr/image_grid.hpp"

namespace tgvr {

/// Synthetic acquisition parameters: activity scale, PSF width, noise seed.
struct DegradationSpec {
    double beta = 1.0;        // activity scale; the paper sweeps [1e-2, 1e2]
    double psf_sigma = 1.17;  // Gaussian PSF standard deviation, pixels
    std::uint64_t rng_seed = 0;
};

/// Elementwise intensity scaling by beta > 0.
ImageGrid scale_activity(const ImageGrid& u0, double beta);

/// Independent Poisson draw per pixel with that pixel's value as the mean.
/// Zero mean always yields zero. Reproducible per seed (SplitMix64 streams
/// keyed by pixel index).
ImageGrid poisson_corrupt(const ImageGrid& means, std::uint64_t seed);

struct Degraded {
    ImageGrid z;
    BlurKernel kernel;
};

/// Full degradation pipeline: scale, blur with a normalized Gaussian PSF
/// (replicate padding), Poisson-corrupt.
Degraded degrade(const ImageGrid& u0, const DegradationSpec& spec);

} // namespace tgvr
