#pragma once

// Independent reference implementations used to cross-check the library:
// brute-force spatial convolution, dense operator materialization, a 1-D
// golden-section prox minimizer, the exact projection onto
// {u >= floor, sum(u) = s}, and a long-run projected subgradient solver for
// the TV-regularized Poisson objective. These deliberately avoid the code
// paths they verify.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "tgvr/blur_kernel.hpp"
#include "tgvr/image_grid.hpp"
#include "tgvr/operator_norm.hpp"

namespace tgvr::testing {

/// Direct O(N * taps) spatial convolution with the same boundary handling as
/// the frequency-domain pipeline.
inline ImageGrid spatial_convolve(const ImageGrid& x, const BlurKernel& k, PaddingMode mode) {
    const int w = x.width(), h = x.height(), R = k.radius();
    ImageGrid out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int dj = -R; dj <= R; ++dj) {
                for (int di = -R; di <= R; ++di) {
                    int sr = r - dj;
                    int sc = c - di;
                    if (mode == PaddingMode::Replicate) {
                        sr = std::clamp(sr, 0, h - 1);
                        sc = std::clamp(sc, 0, w - 1);
                    } else {
                        sr = ((sr % h) + h) % h;
                        sc = ((sc % w) + w) % w;
                    }
                    acc += k.tap(dj, di) * x(sr, sc);
                }
            }
            out(r, c) = acc;
        }
    }
    return out;
}

/// Materialize a LinearOperator column by column.
inline std::vector<std::vector<double>> dense_matrix(const LinearOperator& op) {
    std::vector<std::vector<double>> m(op.range_dim, std::vector<double>(op.domain_dim, 0.0));
    std::vector<double> e(op.domain_dim, 0.0);
    std::vector<double> col(op.range_dim, 0.0);
    for (std::size_t j = 0; j < op.domain_dim; ++j) {
        e[j] = 1.0;
        op.apply(e, col);
        for (std::size_t i = 0; i < op.range_dim; ++i) m[i][j] = col[i];
        e[j] = 0.0;
    }
    return m;
}

/// prox of the scaled Poisson fidelity by golden-section search:
///   argmin_v 0.5 (v - y)^2 + (lambda/sigma) (v - z log v),  v > 0
/// For z == 0 the fidelity is linear and the minimizer is y - lambda/sigma.
inline double poisson_prox_golden(double y, double sigma, double lambda, double z) {
    const double t = lambda / sigma;
    if (z == 0.0) return y - t;

    auto h = [&](double v) { return 0.5 * (v - y) * (v - y) + t * (v - z * std::log(v)); };
    auto dh = [&](double v) { return (v - y) + t * (1.0 - z / v); };

    // h'(v) -> -inf at 0+ and is eventually positive; bracket generously.
    double lo = 1e-14;
    double hi = std::max({1.0, y, z}) + t + std::sqrt(t * z) + 10.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = h(c), fd = h(d);
    for (int it = 0; it < 300 && (b - a) > 1e-10 * std::max(1.0, std::abs(b)); ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = h(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = h(d);
        }
    }
    // Function-value comparisons bottom out around sqrt(eps * |h|); polish
    // with a sign bisection of h' inside a widened golden bracket.
    double blo = std::max(lo, a - 10.0 * (b - a) - 1e-6);
    double bhi = b + 10.0 * (b - a) + 1e-6;
    while (dh(blo) > 0.0 && blo > 1e-300) blo *= 0.5;
    while (dh(bhi) < 0.0) bhi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (blo + bhi);
        if (dh(mid) < 0.0) blo = mid;
        else bhi = mid;
        if (bhi - blo <= 1e-15 * std::max(1.0, bhi)) break;
    }
    return 0.5 * (blo + bhi);
}

/// Moreau route to the conjugate prox: prox_{sigma F*}(x) = x - sigma *
/// prox_{F/sigma}(x / sigma).
inline double poisson_conjugate_prox_oracle(double x, double sigma, double lambda, double z) {
    return x - sigma * poisson_prox_golden(x / sigma, sigma, lambda, z);
}

/// Exact Euclidean projection onto {u >= floor elementwise, sum(u) = total}
/// via the sorted water-filling threshold.
inline std::vector<double> project_sum_floor(std::vector<double> x, double total, double floor_v) {
    const std::size_t n = x.size();
    std::vector<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = x[i] - floor_v;
    const double budget = total - floor_v * static_cast<double>(n);
    // Project `shifted` onto {v >= 0, sum v = budget}: v_i = max(shifted_i - theta, 0).
    std::vector<double> sorted = shifted;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumsum = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cumsum += sorted[k];
        const double cand = (cumsum - budget) / static_cast<double>(k + 1);
        if (k + 1 == n || sorted[k + 1] <= cand) {
            theta = cand;
            break;
        }
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::max(shifted[i] - theta, 0.0) + floor_v;
    }
    return out;
}

/// Long-run projected subgradient descent on the TV-regularized Poisson
/// objective with an identity forward operator:
///   min lambda * sum(u - z log u) + ||grad u||_{2,1}
///   s.t. u >= floor, sum(u) = sum(z)
/// Returns the best objective seen. Independent of the primal-dual solver.
inline double tv_denoise_subgradient_oracle(const ImageGrid& z, double lambda, double floor_v,
                                            long iterations, double step_scale) {
    const int w = z.width(), h = z.height();
    const std::size_t n = z.size();
    const double total = [&] {
        double s = 0.0;
        for (double v : z.values()) s += v;
        return s;
    }();

    auto objective = [&](const std::vector<double>& u) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += u[i] - z[i] * std::log(u[i]);
        s *= lambda;
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                const double gx = c + 1 < w ? u[r * w + c + 1] - u[r * w + c] : 0.0;
                const double gy = r + 1 < h ? u[(r + 1) * w + c] - u[r * w + c] : 0.0;
                s += std::sqrt(gx * gx + gy * gy);
            }
        }
        return s;
    };

    std::vector<double> u(z.values().begin(), z.values().end());
    for (double& v : u) v = std::max(v, floor_v);
    u = project_sum_floor(u, total, floor_v);

    std::vector<double> g(n), gx(n), gy(n);
    double best = objective(u);
    for (long it = 1; it <= iterations; ++it) {
        // Data term gradient.
        for (std::size_t i = 0; i < n; ++i) g[i] = lambda * (1.0 - z[i] / u[i]);
        // TV subgradient: -div(grad u / |grad u|).
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                const std::size_t i = static_cast<std::size_t>(r) * w + c;
                const double dx = c + 1 < w ? u[i + 1] - u[i] : 0.0;
                const double dy = r + 1 < h ? u[i + w] - u[i] : 0.0;
                const double norm = std::sqrt(dx * dx + dy * dy);
                gx[i] = norm > 1e-12 ? dx / norm : 0.0;
                gy[i] = norm > 1e-12 ? dy / norm : 0.0;
            }
        }
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                const std::size_t i = static_cast<std::size_t>(r) * w + c;
                double div = 0.0;
                if (c < w - 1) div += gx[i];
                if (c > 0) div -= gx[i - 1];
                if (r < h - 1) div += gy[i];
                if (r > 0) div -= gy[i - w];
                g[i] -= div;
            }
        }
        const double step = step_scale / std::sqrt(static_cast<double>(it));
        for (std::size_t i = 0; i < n; ++i) u[i] -= step * g[i];
        u = project_sum_floor(u, total, floor_v);
        const double obj = objective(u);
        if (obj < best) best = obj;
    }
    return best;
}

} // namespace tgvr::testing
