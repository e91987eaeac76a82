#pragma once

#include "tgvr/image_grid.hpp"

namespace tgvr {

/// Signal-to-noise ratio of x against the reference y, in dB:
/// 20*log10(||x||_2 / ||x - y||_2). Identical images report +infinity.
double snr(const ImageGrid& x, const ImageGrid& y);

} // namespace tgvr
