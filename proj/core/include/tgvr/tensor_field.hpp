#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tgvr/image_grid.hpp"

namespace tgvr {

/// Per-pixel k-vector field over a raster grid, k in {1, 2, 4}.
/// Storage is pixel-major: index (row*width + col)*arity + component.
///
/// Arity 2 holds vector fields (gradients, the TGV auxiliary field w and its
/// dual), arity 4 holds per-pixel 2x2 tensors in Jacobian order
/// (d1, cross, cross, d2).
class TensorField {
public:
    TensorField() = default;

    TensorField(int width, int height, int arity, double fill = 0.0);

    static TensorField from_values(int width, int height, int arity,
                                   std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int arity() const noexcept { return arity_; }
    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * height_;
    }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double& at(int row, int col, int comp) noexcept { return values_[idx(row, col, comp)]; }
    double at(int row, int col, int comp) const noexcept { return values_[idx(row, col, comp)]; }

    double& operator[](std::size_t i) noexcept { return values_[i]; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool all_finite() const noexcept;
    bool same_shape(const TensorField& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_ && arity_ == other.arity_;
    }
    bool same_grid(const ImageGrid& grid) const noexcept {
        return width_ == grid.width() && height_ == grid.height();
    }

private:
    std::size_t idx(int row, int col, int comp) const noexcept {
        return (static_cast<std::size_t>(row) * width_ + col) * arity_ + comp;
    }

    int width_ = 0;
    int height_ = 0;
    int arity_ = 0;
    std::vector<double> values_;
};

} // namespace tgvr
