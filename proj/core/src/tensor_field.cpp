#include "tgvr/tensor_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tgvr {

TensorField::TensorField(int width, int height, int arity, double fill)
    : width_(width), height_(height), arity_(arity) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("TensorField: dimensions must be positive");
    }
    if (arity != 1 && arity != 2 && arity != 4) {
        throw std::invalid_argument("TensorField: arity must be 1, 2 or 4, got " +
                                    std::to_string(arity));
    }
    values_.assign(static_cast<std::size_t>(width) * height * arity, fill);
}

TensorField TensorField::from_values(int width, int height, int arity,
                                     std::vector<double> values) {
    TensorField f(width, height, arity);
    if (values.size() != f.size()) {
        throw std::invalid_argument("TensorField: value count does not match dimensions");
    }
    f.values_ = std::move(values);
    if (!f.all_finite()) {
        throw std::invalid_argument("TensorField: non-finite component values");
    }
    return f;
}

bool TensorField::all_finite() const noexcept {
    for (double v : values_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

} // namespace tgvr
