#include "tgvr/prox.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tgvr/grid_ops.hpp"

namespace tgvr {

ImageGrid prox_positivity_photometry(const ImageGrid& x, const ImageGrid& z) {
    if (!x.same_shape(z)) {
        throw std::invalid_argument("prox_positivity_photometry: shape mismatch");
    }
    ImageGrid clamped(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i) {
        clamped[i] = x[i] > 0.0 ? x[i] : 0.0;
    }
    const double shift = (grid_sum(clamped) - grid_sum(z)) / static_cast<double>(x.size());
    for (std::size_t i = 0; i < clamped.size(); ++i) clamped[i] -= shift;
    return clamped;
}

double prox_poisson_conjugate_scalar(double x, double sigma, double lambda, double z) {
    if (z == 0.0) return lambda;
    const double d = x - lambda;
    double disc = d * d + 4.0 * sigma * lambda * z;
    if (disc < 0.0) disc = 0.0;  // nonnegative by construction; guards round-off
    return 0.5 * (x + lambda - std::sqrt(disc));
}

ImageGrid prox_poisson_conjugate(const ImageGrid& x, double sigma, double lambda,
                                 const ImageGrid& z) {
    if (!x.same_shape(z)) {
        throw std::invalid_argument("prox_poisson_conjugate: shape mismatch");
    }
    if (!(sigma > 0.0)) throw std::invalid_argument("prox_poisson_conjugate: sigma must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("prox_poisson_conjugate: lambda must be positive");
    ImageGrid out(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = prox_poisson_conjugate_scalar(x[i], sigma, lambda, z[i]);
    }
    return out;
}

TensorField project_l2inf_ball(const TensorField& x, double radius) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("project_l2inf_ball: radius must be positive");
    }
    const int k = x.arity();
    const std::size_t n = x.pixel_count();
    TensorField out(x.width(), x.height(), k);
    const double* src = x.values().data();
    double* dst = out.values().data();
    // The shrink factor is nudged down by a few ulp so the projected norm
    // never exceeds the radius in floating point.
    constexpr double guard = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    for (std::size_t i = 0; i < n; ++i) {
        const double* v = src + i * k;
        double* o = dst + i * k;
        double s = 0.0;
        for (int c = 0; c < k; ++c) s += v[c] * v[c];
        const double norm = std::sqrt(s);
        if (norm <= radius) {
            for (int c = 0; c < k; ++c) o[c] = v[c];
        } else {
            const double scale = radius / (norm * guard);
            for (int c = 0; c < k; ++c) o[c] = v[c] * scale;
        }
    }
    return out;
}

} // namespace tgvr
