#include "tgvr/grid_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tgvr {
namespace {

void require_same_shape(const ImageGrid& a, const ImageGrid& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("grid dimensions do not match");
    }
}

void require_same_shape(const TensorField& a, const TensorField& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("tensor field shapes do not match");
    }
}

// Neumaier variant of Kahan summation.
double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

double compensated_dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double v = a[i] * b[i];
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

} // namespace

double guarded_log(double t) noexcept {
    return t > 0.0 ? std::log(t) : 0.0;
}

ImageGrid guarded_log(const ImageGrid& x) {
    ImageGrid out(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = guarded_log(x[i]);
    return out;
}

ImageGrid add(const ImageGrid& a, const ImageGrid& b) {
    require_same_shape(a, b);
    ImageGrid out(a.width(), a.height());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

ImageGrid subtract(const ImageGrid& a, const ImageGrid& b) {
    require_same_shape(a, b);
    ImageGrid out(a.width(), a.height());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

ImageGrid hadamard(const ImageGrid& a, const ImageGrid& b) {
    require_same_shape(a, b);
    ImageGrid out(a.width(), a.height());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

ImageGrid scaled(const ImageGrid& x, double factor) {
    ImageGrid out(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * factor;
    return out;
}

ImageGrid lincomb(double a, const ImageGrid& x, double b, const ImageGrid& y) {
    require_same_shape(x, y);
    ImageGrid out(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
}

TensorField add(const TensorField& a, const TensorField& b) {
    require_same_shape(a, b);
    TensorField out(a.width(), a.height(), a.arity());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

TensorField subtract(const TensorField& a, const TensorField& b) {
    require_same_shape(a, b);
    TensorField out(a.width(), a.height(), a.arity());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

TensorField scaled(const TensorField& x, double factor) {
    TensorField out(x.width(), x.height(), x.arity());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * factor;
    return out;
}

TensorField lincomb(double a, const TensorField& x, double b, const TensorField& y) {
    require_same_shape(x, y);
    TensorField out(x.width(), x.height(), x.arity());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
}

double grid_sum(const ImageGrid& x) {
    return compensated_sum(x.values());
}

double dot(const ImageGrid& a, const ImageGrid& b) {
    require_same_shape(a, b);
    return compensated_dot(a.values(), b.values());
}

double dot(const TensorField& a, const TensorField& b) {
    require_same_shape(a, b);
    return compensated_dot(a.values(), b.values());
}

double l2_norm(const ImageGrid& x) {
    return std::sqrt(compensated_dot(x.values(), x.values()));
}

double l2_norm(const TensorField& x) {
    return std::sqrt(compensated_dot(x.values(), x.values()));
}

double min_value(const ImageGrid& x) {
    return *std::min_element(x.values().begin(), x.values().end());
}

double max_value(const ImageGrid& x) {
    return *std::max_element(x.values().begin(), x.values().end());
}

double lpq_norm(const TensorField& x, double p, double q) {
    if (!(p >= 1.0)) throw std::invalid_argument("lpq_norm: requires p >= 1");
    const bool q_inf = std::isinf(q);
    if (!q_inf && !(q >= 1.0)) throw std::invalid_argument("lpq_norm: requires q >= 1");

    const int k = x.arity();
    const std::size_t n = x.pixel_count();
    auto pixel_norm = [&](std::size_t i) {
        const double* v = x.values().data() + i * k;
        if (p == 2.0) {
            double s = 0.0;
            for (int c = 0; c < k; ++c) s += v[c] * v[c];
            return std::sqrt(s);
        }
        if (p == 1.0) {
            double s = 0.0;
            for (int c = 0; c < k; ++c) s += std::abs(v[c]);
            return s;
        }
        double s = 0.0;
        for (int c = 0; c < k; ++c) s += std::pow(std::abs(v[c]), p);
        return std::pow(s, 1.0 / p);
    };

    if (q_inf) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, pixel_norm(i));
        return m;
    }
    if (q == 1.0) {
        double s = 0.0;
        double comp = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = pixel_norm(i);
            double t = s + v;
            if (std::abs(s) >= std::abs(v)) comp += (s - t) + v;
            else comp += (v - t) + s;
            s = t;
        }
        return s + comp;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(pixel_norm(i), q);
    return std::pow(s, 1.0 / q);
}

TensorField as_tensor(const ImageGrid& x) {
    TensorField f(x.width(), x.height(), 1);
    std::copy(x.values().begin(), x.values().end(), f.values().begin());
    return f;
}

ImageGrid to_image(const TensorField& x) {
    if (x.arity() != 1) throw std::invalid_argument("to_image: requires arity 1");
    ImageGrid g(x.width(), x.height());
    std::copy(x.values().begin(), x.values().end(), g.values().begin());
    return g;
}

} // namespace tgvr
