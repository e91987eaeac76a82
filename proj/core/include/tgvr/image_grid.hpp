#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tgvr {

/// Real-valued raster image, row-major. The e1 axis is horizontal (column
/// index), e2 is vertical (row index). Difference operators need at least
/// two samples per axis, so constructed grids are at least 2x2.
///
/// Value type: immutable from the caller's perspective once filled; safe to
/// share read-only across threads.
class ImageGrid {
public:
    /// Empty sentinel (width == height == 0). Any real grid is >= 2x2.
    ImageGrid() = default;

    ImageGrid(int width, int height, double fill = 0.0);

    /// Takes ownership of `values` (row-major, size width*height).
    /// Rejects mismatched sizes and non-finite samples.
    static ImageGrid from_values(int width, int height, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double& operator()(int row, int col) noexcept { return values_[idx(row, col)]; }
    double operator()(int row, int col) const noexcept { return values_[idx(row, col)]; }

    double& operator[](std::size_t i) noexcept { return values_[i]; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool all_finite() const noexcept;
    bool same_shape(const ImageGrid& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    std::size_t idx(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

} // namespace tgvr
