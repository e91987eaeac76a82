#include "tgvr/image_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tgvr {

ImageGrid::ImageGrid(int width, int height, double fill)
    : width_(width), height_(height) {
    if (width < 2 || height < 2) {
        throw std::invalid_argument("ImageGrid: dimensions must be at least 2x2, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
    values_.assign(static_cast<std::size_t>(width) * height, fill);
}

ImageGrid ImageGrid::from_values(int width, int height, std::vector<double> values) {
    ImageGrid g(width, height);
    if (values.size() != g.size()) {
        throw std::invalid_argument("ImageGrid: value count does not match dimensions");
    }
    g.values_ = std::move(values);
    if (!g.all_finite()) {
        throw std::invalid_argument("ImageGrid: non-finite sample values");
    }
    return g;
}

bool ImageGrid::all_finite() const noexcept {
    for (double v : values_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

} // namespace tgvr
