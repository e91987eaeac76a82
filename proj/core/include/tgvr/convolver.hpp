#pragma once

#include <memory>

#include "tgvr/blur_kernel.hpp"
#include "tgvr/image_grid.hpp"

namespace tgvr {

/// Frequency-domain realization of a blur kernel for one grid size and
/// padding mode. apply/apply_adjoint are reentrant; scratch buffers are
/// allocated per call.
class Convolver {
public:
    Convolver(const BlurKernel& kernel, int width, int height, PaddingMode mode);
    ~Convolver();

    Convolver(const Convolver&) = delete;
    Convolver& operator=(const Convolver&) = delete;

    /// K x
    ImageGrid apply(const ImageGrid& x) const;

    /// K* y, the exact transpose of the padded pipeline: embed-adjoint,
    /// circular correlation, fold the padded borders back.
    ImageGrid apply_adjoint(const ImageGrid& y) const;

    int width() const noexcept;
    int height() const noexcept;
    PaddingMode mode() const noexcept;
    int padded_width() const noexcept;
    int padded_height() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace tgvr
