#pragma once

#include <cstdint>

#include "tgvr/image_grid.hpp"
#include "tgvr/rng.hpp"
#include "tgvr/tensor_field.hpp"

namespace tgvr::testing {

inline ImageGrid random_grid(int width, int height, SplitMix64& rng, double lo = -1.0,
                             double hi = 1.0) {
    ImageGrid g(width, height);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = lo + (hi - lo) * rng.next_double();
    }
    return g;
}

inline TensorField random_field(int width, int height, int arity, SplitMix64& rng,
                                double lo = -1.0, double hi = 1.0) {
    TensorField f(width, height, arity);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = lo + (hi - lo) * rng.next_double();
    }
    return f;
}

} // namespace tgvr::testing
