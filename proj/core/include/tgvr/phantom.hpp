#pragma once

#include "tgvr/image_grid.hpp"

namespace tgvr {

/// Deterministic synthetic ground truth: Shepp-Logan ellipse geometry with
/// the constant surfaces replaced by affine ramps, Gaussian bumps and
/// low-frequency sinusoids, plus a few small bright disks as fine detail.
/// The background outside the outer ellipse is exactly zero and the global
/// intensity range is [0, 255]. Requires n1, n2 >= 32.
ImageGrid shepp_logan_modified(int n1, int n2);

} // namespace tgvr
