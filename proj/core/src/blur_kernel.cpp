#include "tgvr/blur_kernel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "tgvr/convolver.hpp"

namespace tgvr {

struct BlurKernel::PlanCache {
    std::mutex mutex;
    std::map<std::tuple<int, int, PaddingMode>, std::unique_ptr<Convolver>> plans;
};

BlurKernel::BlurKernel(double sigma, int radius, std::vector<double> taps)
    : sigma_(sigma), radius_(radius), taps_(std::move(taps)),
      cache_(std::make_shared<PlanCache>()) {}

BlurKernel BlurKernel::gaussian(double sigma_px, int support_radius) {
    if (!(sigma_px > 0.0)) {
        throw std::invalid_argument("gaussian kernel: sigma must be positive");
    }
    const int min_radius = static_cast<int>(std::ceil(3.0 * sigma_px));
    if (support_radius < min_radius) {
        throw std::invalid_argument("gaussian kernel: support radius below ceil(3*sigma)");
    }
    const int n = 2 * support_radius + 1;
    std::vector<double> taps(static_cast<std::size_t>(n) * n);
    const double inv2s2 = 1.0 / (2.0 * sigma_px * sigma_px);
    double sum = 0.0;
    for (int dj = -support_radius; dj <= support_radius; ++dj) {
        for (int di = -support_radius; di <= support_radius; ++di) {
            double v = std::exp(-(static_cast<double>(di) * di + static_cast<double>(dj) * dj) * inv2s2);
            taps[static_cast<std::size_t>(dj + support_radius) * n + (di + support_radius)] = v;
            sum += v;
        }
    }
    for (double& t : taps) t /= sum;
    return BlurKernel(sigma_px, support_radius, std::move(taps));
}

BlurKernel BlurKernel::gaussian(double sigma_px) {
    if (!(sigma_px > 0.0)) {
        throw std::invalid_argument("gaussian kernel: sigma must be positive");
    }
    return gaussian(sigma_px, static_cast<int>(std::ceil(4.0 * sigma_px)));
}

BlurKernel BlurKernel::delta() {
    return BlurKernel(0.0, 0, {1.0});
}

double BlurKernel::tap(int dj, int di) const {
    if (dj < -radius_ || dj > radius_ || di < -radius_ || di > radius_) {
        throw std::out_of_range("kernel tap offset outside support");
    }
    const int n = 2 * radius_ + 1;
    return taps_[static_cast<std::size_t>(dj + radius_) * n + (di + radius_)];
}

const Convolver& BlurKernel::plan_for(int width, int height, PaddingMode mode) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto key = std::make_tuple(width, height, mode);
    auto it = cache_->plans.find(key);
    if (it == cache_->plans.end()) {
        it = cache_->plans.emplace(key, std::make_unique<Convolver>(*this, width, height, mode)).first;
    }
    return *it->second;
}

double sigma_from_fwhm(double fwhm_mm, double pixel_mm) {
    if (!(fwhm_mm > 0.0) || !(pixel_mm > 0.0)) {
        throw std::invalid_argument("sigma_from_fwhm: FWHM and pixel pitch must be positive");
    }
    return fwhm_mm / (2.0 * std::sqrt(2.0 * std::log(2.0)) * pixel_mm);
}

ImageGrid convolve(const ImageGrid& x, const BlurKernel& k, PaddingMode mode) {
    return k.plan_for(x.width(), x.height(), mode).apply(x);
}

ImageGrid adjoint_convolve(const ImageGrid& x, const BlurKernel& k, PaddingMode mode) {
    return k.plan_for(x.width(), x.height(), mode).apply_adjoint(x);
}

} // namespace tgvr
