#pragma once

#include <memory>
#include <span>
#include <vector>

#include "tgvr/image_grid.hpp"

namespace tgvr {

/// Boundary handling for frequency-domain convolution.
/// Replicate pads by the kernel radius with edge values before the transform
/// and crops afterwards, which suppresses wrap-around ringing. Periodic is
/// plain circular convolution on the original grid.
enum class PaddingMode { Replicate, Periodic };

class Convolver;

/// Normalized isotropic blur kernel on an odd square support, plus a cache
/// of frequency-domain plans keyed by target grid size. Immutable after
/// construction; plan_for and the cache are thread safe.
class BlurKernel {
public:
    /// Taps proportional to exp(-(i^2+j^2)/(2 sigma^2)) on [-radius, radius]^2,
    /// renormalized to sum 1. Requires sigma > 0 and radius >= ceil(3*sigma).
    static BlurKernel gaussian(double sigma_px, int support_radius);

    /// Same with the default support radius ceil(4*sigma).
    static BlurKernel gaussian(double sigma_px);

    /// Single unit tap; convolution is the identity.
    static BlurKernel delta();

    double sigma() const noexcept { return sigma_; }
    int radius() const noexcept { return radius_; }

    /// (2*radius+1)^2 taps, row-major over (dj, di) offsets.
    std::span<const double> taps() const noexcept { return taps_; }

    /// Tap at row offset dj, column offset di, each in [-radius, radius].
    double tap(int dj, int di) const;

    /// Cached frequency-domain plan for a target grid.
    const Convolver& plan_for(int width, int height, PaddingMode mode) const;

private:
    BlurKernel(double sigma, int radius, std::vector<double> taps);

    struct PlanCache;

    double sigma_ = 0.0;
    int radius_ = 0;
    std::vector<double> taps_;
    std::shared_ptr<PlanCache> cache_;
};

/// Kernel sigma in pixels for a Gaussian of the given FWHM:
/// sigma = fwhm_mm / (2*sqrt(2*ln 2) * pixel_mm).
double sigma_from_fwhm(double fwhm_mm, double pixel_mm);

/// K x: blur the image with the kernel under the given boundary handling.
ImageGrid convolve(const ImageGrid& x, const BlurKernel& k,
                   PaddingMode mode = PaddingMode::Replicate);

/// K* x: exact adjoint of convolve (transpose of the padded pipeline).
ImageGrid adjoint_convolve(const ImageGrid& x, const BlurKernel& k,
                           PaddingMode mode = PaddingMode::Replicate);

} // namespace tgvr
