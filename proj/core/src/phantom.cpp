#include "tgvr/phantom.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tgvr {
namespace {

enum class Texture { Constant, AffineLocal, GaussLocal, SinGlobal };

struct Ellipse {
    double value;    // additive intensity of the region
    double a, b;     // half-axes in [-1, 1] coordinates
    double x0, y0;   // center
    double phi_deg;  // rotation, counterclockwise
    Texture texture;
    double p0, p1, p2, p3;  // texture parameters
};

// Classic Shepp-Logan geometry; textures replace the constant surfaces.
// The outer two ellipses share one global sinusoid so their difference (the
// brain interior) stays strictly positive. The last three entries are the
// small bright disks.
constexpr Ellipse kEllipses[] = {
    {1.00, 0.690, 0.920, 0.00, 0.0000, 0, Texture::SinGlobal, 0.15, 0.8, 0.5, 0.3},
    {-0.80, 0.6200, 0.8200, 0.00, -0.0184, 0, Texture::SinGlobal, 0.15, 0.8, 0.5, 0.3},
    {-0.20, 0.110, 0.310, 0.22, 0.0000, -18, Texture::AffineLocal, 0.55, 0.0, 0, 0},
    {-0.20, 0.160, 0.410, -0.22, 0.0000, 18, Texture::AffineLocal, 0.0, 0.55, 0, 0},
    {0.10, 0.210, 0.250, 0.00, 0.3500, 0, Texture::GaussLocal, 0.35, 1.10, 0.45, 0},
    {0.10, 0.046, 0.046, 0.00, 0.1000, 0, Texture::GaussLocal, 0.35, 1.10, 0.50, 0},
    {0.10, 0.046, 0.046, 0.00, -0.1000, 0, Texture::SinGlobal, 0.30, 6.0, 2.0, 0.0},
    {0.10, 0.046, 0.023, -0.08, -0.6050, 0, Texture::SinGlobal, 0.30, 2.0, 6.0, 0.5},
    {0.10, 0.023, 0.023, 0.00, -0.6060, 0, Texture::Constant, 0, 0, 0, 0},
    {0.10, 0.023, 0.046, 0.06, -0.6050, 0, Texture::SinGlobal, 0.30, 5.0, 5.0, 0.0},
    {0.55, 0.035, 0.035, 0.45, -0.2200, 0, Texture::Constant, 0, 0, 0, 0},
    {0.55, 0.025, 0.025, -0.50, -0.1800, 0, Texture::Constant, 0, 0, 0, 0},
    {0.55, 0.030, 0.030, 0.33, 0.4500, 0, Texture::Constant, 0, 0, 0, 0},
};

double texture_value(const Ellipse& e, double xi, double eta, double x, double y) {
    switch (e.texture) {
        case Texture::Constant:
            return 1.0;
        case Texture::AffineLocal:
            return 1.0 + e.p0 * xi + e.p1 * eta;
        case Texture::GaussLocal:
            return e.p0 + e.p1 * std::exp(-(xi * xi + eta * eta) / (2.0 * e.p2 * e.p2));
        case Texture::SinGlobal:
            return 1.0 + e.p0 * std::sin(std::numbers::pi * (e.p1 * x + e.p2 * y) + e.p3);
    }
    return 1.0;
}

} // namespace

ImageGrid shepp_logan_modified(int n1, int n2) {
    if (n1 < 32 || n2 < 32) {
        throw std::invalid_argument("shepp_logan_modified: grid must be at least 32x32");
    }
    ImageGrid img(n1, n2, 0.0);

    constexpr double deg = std::numbers::pi / 180.0;
    double max_v = 0.0;
    for (int row = 0; row < n2; ++row) {
        const double y = 1.0 - 2.0 * row / (n2 - 1.0);
        for (int col = 0; col < n1; ++col) {
            const double x = -1.0 + 2.0 * col / (n1 - 1.0);
            double v = 0.0;
            bool inside_outer = false;
            for (std::size_t e = 0; e < std::size(kEllipses); ++e) {
                const Ellipse& el = kEllipses[e];
                const double dx = x - el.x0;
                const double dy = y - el.y0;
                const double c = std::cos(el.phi_deg * deg);
                const double s = std::sin(el.phi_deg * deg);
                const double xi = (dx * c + dy * s) / el.a;
                const double eta = (-dx * s + dy * c) / el.b;
                if (xi * xi + eta * eta > 1.0) continue;
                if (e == 0) inside_outer = true;
                v += el.value * texture_value(el, xi, eta, x, y);
            }
            // Background is identically zero; texture interplay may dip a
            // region below zero, which is clamped (zero-activity pocket).
            if (!inside_outer || v < 0.0) v = 0.0;
            img(row, col) = v;
            if (v > max_v) max_v = v;
        }
    }

    for (std::size_t i = 0; i < img.size(); ++i) {
        img[i] = img[i] / max_v * 255.0;
    }
    return img;
}

} // namespace tgvr
