#pragma once

#include "tgvr/image_grid.hpp"
#include "tgvr/tensor_field.hpp"

namespace tgvr {

/// Guarded logarithm: log(t) for t > 0, and 0 otherwise.
double guarded_log(double t) noexcept;

/// Elementwise guarded logarithm.
ImageGrid guarded_log(const ImageGrid& x);

ImageGrid add(const ImageGrid& a, const ImageGrid& b);
ImageGrid subtract(const ImageGrid& a, const ImageGrid& b);
ImageGrid hadamard(const ImageGrid& a, const ImageGrid& b);
ImageGrid scaled(const ImageGrid& x, double factor);
/// a*x + b*y
ImageGrid lincomb(double a, const ImageGrid& x, double b, const ImageGrid& y);

TensorField add(const TensorField& a, const TensorField& b);
TensorField subtract(const TensorField& a, const TensorField& b);
TensorField scaled(const TensorField& x, double factor);
TensorField lincomb(double a, const TensorField& x, double b, const TensorField& y);

/// Compensated (Neumaier) sum of all samples.
double grid_sum(const ImageGrid& x);

double dot(const ImageGrid& a, const ImageGrid& b);
double dot(const TensorField& a, const TensorField& b);
double l2_norm(const ImageGrid& x);
double l2_norm(const TensorField& x);
double min_value(const ImageGrid& x);
double max_value(const ImageGrid& x);

/// L_{p,q} norm: (sum_i ||x_i||_p^q)^(1/q) over per-pixel vectors x_i.
/// Pass q = infinity for the max over pixels. Requires p >= 1 and q >= 1.
double lpq_norm(const TensorField& x, double p, double q);

/// Copy an image into an arity-1 field (for the generic norm/operator API).
TensorField as_tensor(const ImageGrid& x);
/// Copy an arity-1 field back to an image.
ImageGrid to_image(const TensorField& x);

} // namespace tgvr
