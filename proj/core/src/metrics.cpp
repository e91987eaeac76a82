#include "tgvr/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tgvr/grid_ops.hpp"

namespace tgvr {

double snr(const ImageGrid& x, const ImageGrid& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("snr: shape mismatch");
    const double resid = l2_norm(subtract(x, y));
    if (resid == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(l2_norm(x) / resid);
}

} // namespace tgvr
