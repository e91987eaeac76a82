#include "tgvr/convolver.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace tgvr {
namespace {

// FFTW's planner is not reentrant; execution through the new-array API is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Smallest m >= n whose prime factors are all in {2, 3, 5}.
int next_smooth(int n) {
    for (int m = n;; ++m) {
        int r = m;
        for (int f : {2, 3, 5}) {
            while (r % f == 0) r /= f;
        }
        if (r == 1) return m;
    }
}

struct RealBuffer {
    double* data = nullptr;
    explicit RealBuffer(std::size_t n) {
        data = fftw_alloc_real(n);
        std::fill(data, data + n, 0.0);
    }
    ~RealBuffer() { fftw_free(data); }
    RealBuffer(const RealBuffer&) = delete;
    RealBuffer& operator=(const RealBuffer&) = delete;
};

struct ComplexBuffer {
    fftw_complex* data = nullptr;
    explicit ComplexBuffer(std::size_t n) {
        data = fftw_alloc_complex(n);
        std::fill(&data[0][0], &data[0][0] + 2 * n, 0.0);
    }
    ~ComplexBuffer() { fftw_free(data); }
    ComplexBuffer(const ComplexBuffer&) = delete;
    ComplexBuffer& operator=(const ComplexBuffer&) = delete;
};

} // namespace

struct Convolver::Impl {
    int width = 0;
    int height = 0;
    int radius = 0;
    PaddingMode mode = PaddingMode::Replicate;
    int pw = 0;  // padded width
    int ph = 0;  // padded height
    std::size_t n_real = 0;
    std::size_t n_complex = 0;
    double inv_size = 0.0;

    std::vector<double> spectrum_re;
    std::vector<double> spectrum_im;

    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (inverse) fftw_destroy_plan(inverse);
    }

    bool identity() const noexcept { return radius == 0; }

    void transform_and_multiply(double* padded, bool conjugate) const {
        ComplexBuffer freq(n_complex);
        fftw_execute_dft_r2c(forward, padded, freq.data);
        const double sgn = conjugate ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n_complex; ++i) {
            const double xr = freq.data[i][0];
            const double xi = freq.data[i][1];
            const double kr = spectrum_re[i];
            const double ki = sgn * spectrum_im[i];
            freq.data[i][0] = xr * kr - xi * ki;
            freq.data[i][1] = xr * ki + xi * kr;
        }
        fftw_execute_dft_c2r(inverse, freq.data, padded);
        for (std::size_t i = 0; i < n_real; ++i) padded[i] *= inv_size;
    }
};

Convolver::Convolver(const BlurKernel& kernel, int width, int height, PaddingMode mode)
    : impl_(std::make_unique<Impl>()) {
    if (width < 2 || height < 2) {
        throw std::invalid_argument("Convolver: grid must be at least 2x2");
    }
    const int radius = kernel.radius();
    if (2 * radius + 1 > std::min(width, height)) {
        throw std::invalid_argument("Convolver: kernel support exceeds image size");
    }

    impl_->width = width;
    impl_->height = height;
    impl_->radius = radius;
    impl_->mode = mode;
    if (mode == PaddingMode::Replicate) {
        impl_->pw = next_smooth(width + 2 * radius);
        impl_->ph = next_smooth(height + 2 * radius);
    } else {
        impl_->pw = width;
        impl_->ph = height;
    }
    const int pw = impl_->pw, ph = impl_->ph;
    impl_->n_real = static_cast<std::size_t>(pw) * ph;
    impl_->n_complex = static_cast<std::size_t>(ph) * (pw / 2 + 1);
    impl_->inv_size = 1.0 / static_cast<double>(impl_->n_real);

    if (impl_->identity()) return;  // spatial fast path, no plans needed

    RealBuffer kbuf(impl_->n_real);
    ComplexBuffer kfreq(impl_->n_complex);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        impl_->forward = fftw_plan_dft_r2c_2d(ph, pw, kbuf.data, kfreq.data, FFTW_ESTIMATE);
        impl_->inverse = fftw_plan_dft_c2r_2d(ph, pw, kfreq.data, kbuf.data, FFTW_ESTIMATE);
    }
    if (!impl_->forward || !impl_->inverse) {
        throw std::runtime_error("Convolver: FFTW plan creation failed");
    }

    // Kernel embedded with wrap-around: circular convolution computes
    // out(a) = sum_t k(t) in(a - t), so tap (dj, di) lands at
    // (dj mod ph, di mod pw). Fill after planning, which may scribble on
    // the buffers.
    std::fill(kbuf.data, kbuf.data + impl_->n_real, 0.0);
    for (int dj = -radius; dj <= radius; ++dj) {
        for (int di = -radius; di <= radius; ++di) {
            const int r = ((dj % ph) + ph) % ph;
            const int c = ((di % pw) + pw) % pw;
            kbuf.data[static_cast<std::size_t>(r) * pw + c] = kernel.tap(dj, di);
        }
    }
    fftw_execute_dft_r2c(impl_->forward, kbuf.data, kfreq.data);
    impl_->spectrum_re.resize(impl_->n_complex);
    impl_->spectrum_im.resize(impl_->n_complex);
    for (std::size_t i = 0; i < impl_->n_complex; ++i) {
        impl_->spectrum_re[i] = kfreq.data[i][0];
        impl_->spectrum_im[i] = kfreq.data[i][1];
    }
}

Convolver::~Convolver() = default;

int Convolver::width() const noexcept { return impl_->width; }
int Convolver::height() const noexcept { return impl_->height; }
PaddingMode Convolver::mode() const noexcept { return impl_->mode; }
int Convolver::padded_width() const noexcept { return impl_->pw; }
int Convolver::padded_height() const noexcept { return impl_->ph; }

ImageGrid Convolver::apply(const ImageGrid& x) const {
    const Impl& im = *impl_;
    if (x.width() != im.width || x.height() != im.height) {
        throw std::invalid_argument("Convolver::apply: image size does not match plan");
    }
    if (im.identity()) return x;

    const int w = im.width, h = im.height, R = im.radius, pw = im.pw;
    RealBuffer padded(im.n_real);
    const double* xdata = x.values().data();
    if (im.mode == PaddingMode::Replicate) {
        for (int pr = 0; pr < h + 2 * R; ++pr) {
            const int sr = std::clamp(pr - R, 0, h - 1);
            const double* src = xdata + static_cast<std::size_t>(sr) * w;
            double* row = padded.data + static_cast<std::size_t>(pr) * pw;
            for (int pc = 0; pc < w + 2 * R; ++pc) {
                row[pc] = src[std::clamp(pc - R, 0, w - 1)];
            }
        }
    } else {
        for (int r = 0; r < h; ++r) {
            std::copy_n(xdata + static_cast<std::size_t>(r) * w, w,
                        padded.data + static_cast<std::size_t>(r) * pw);
        }
    }

    im.transform_and_multiply(padded.data, /*conjugate=*/false);

    ImageGrid out(w, h);
    const int off = (im.mode == PaddingMode::Replicate) ? R : 0;
    double* odata = out.values().data();
    for (int r = 0; r < h; ++r) {
        const double* row = padded.data + static_cast<std::size_t>(r + off) * pw + off;
        std::copy_n(row, w, odata + static_cast<std::size_t>(r) * w);
    }
    return out;
}

ImageGrid Convolver::apply_adjoint(const ImageGrid& y) const {
    const Impl& im = *impl_;
    if (y.width() != im.width || y.height() != im.height) {
        throw std::invalid_argument("Convolver::apply_adjoint: image size does not match plan");
    }
    if (im.identity()) return y;

    const int w = im.width, h = im.height, R = im.radius, pw = im.pw;
    RealBuffer padded(im.n_real);
    const int off = (im.mode == PaddingMode::Replicate) ? R : 0;
    const double* ydata = y.values().data();
    for (int r = 0; r < h; ++r) {
        std::copy_n(ydata + static_cast<std::size_t>(r) * w, w,
                    padded.data + static_cast<std::size_t>(r + off) * pw + off);
    }

    // Correlation: multiply by the conjugate spectrum.
    im.transform_and_multiply(padded.data, /*conjugate=*/true);

    ImageGrid out(w, h, 0.0);
    if (im.mode == PaddingMode::Replicate) {
        // Transpose of replicate padding: fold every padded sample back onto
        // the source pixel it was copied from. The smooth-size extension zone
        // has no source and is dropped.
        for (int pr = 0; pr < h + 2 * R; ++pr) {
            const int sr = std::clamp(pr - R, 0, h - 1);
            const double* row = padded.data + static_cast<std::size_t>(pr) * pw;
            for (int pc = 0; pc < w + 2 * R; ++pc) {
                out(sr, std::clamp(pc - R, 0, w - 1)) += row[pc];
            }
        }
    } else {
        for (int r = 0; r < h; ++r) {
            std::copy_n(padded.data + static_cast<std::size_t>(r) * pw, w, &out(r, 0));
        }
    }
    return out;
}

} // namespace tgvr
