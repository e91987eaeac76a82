#include "tgvr/diff_ops.hpp"

#include <stdexcept>

namespace tgvr {
namespace {

void require_min_grid(int width, int height) {
    if (width < 2 || height < 2) {
        throw std::invalid_argument("difference operators need a grid of at least 2x2");
    }
}

// out gets the forward difference along e1 (columns) of component `comp`.
template <typename Src>
inline double fwd1(const Src& x, int row, int col, int comp, int width) {
    return col + 1 < width ? x.at(row, col + 1, comp) - x.at(row, col, comp) : 0.0;
}

template <typename Src>
inline double fwd2(const Src& x, int row, int col, int comp, int height) {
    return row + 1 < height ? x.at(row + 1, col, comp) - x.at(row, col, comp) : 0.0;
}

// Adjoint of the forward difference along e1: -y(c) at the leading edge,
// y(c-1) - y(c) inside, y(c-2+1) at the trailing edge (last column of y is
// structurally ignored, matching the zero trailing difference).
template <typename Src>
inline double adj1(const Src& y, int row, int col, int comp, int width) {
    double v = 0.0;
    if (col > 0) v += y.at(row, col - 1, comp);
    if (col < width - 1) v -= y.at(row, col, comp);
    return v;
}

template <typename Src>
inline double adj2(const Src& y, int row, int col, int comp, int height) {
    double v = 0.0;
    if (row > 0) v += y.at(row - 1, col, comp);
    if (row < height - 1) v -= y.at(row, col, comp);
    return v;
}

struct GridView {
    const ImageGrid& g;
    double at(int row, int col, int) const noexcept { return g(row, col); }
};

} // namespace

TensorField gradient(const ImageGrid& x) {
    require_min_grid(x.width(), x.height());
    const int w = x.width(), h = x.height();
    TensorField out(w, h, 2);
    GridView v{x};
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            out.at(r, c, 0) = fwd1(v, r, c, 0, w);
            out.at(r, c, 1) = fwd2(v, r, c, 0, h);
        }
    }
    return out;
}

TensorField gradient(const TensorField& x) {
    require_min_grid(x.width(), x.height());
    const int k = x.arity();
    if (k != 1 && k != 2) {
        throw std::invalid_argument("gradient: tensor field arity must be 1 or 2");
    }
    const int w = x.width(), h = x.height();
    TensorField out(w, h, 2 * k);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            for (int comp = 0; comp < k; ++comp) {
                out.at(r, c, comp) = fwd1(x, r, c, comp, w);
                out.at(r, c, k + comp) = fwd2(x, r, c, comp, h);
            }
        }
    }
    return out;
}

TensorField divergence(const TensorField& y) {
    require_min_grid(y.width(), y.height());
    const int a = y.arity();
    if (a != 2 && a != 4) {
        throw std::invalid_argument("divergence: arity must be 2 or 4");
    }
    const int k = a / 2;
    const int w = y.width(), h = y.height();
    TensorField out(w, h, k);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            for (int comp = 0; comp < k; ++comp) {
                out.at(r, c, comp) =
                    -adj1(y, r, c, comp, w) - adj2(y, r, c, k + comp, h);
            }
        }
    }
    return out;
}

ImageGrid divergence_image(const TensorField& y) {
    if (y.arity() != 2) {
        throw std::invalid_argument("divergence_image: arity must be 2");
    }
    const int w = y.width(), h = y.height();
    require_min_grid(w, h);
    ImageGrid out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            out(r, c) = -adj1(y, r, c, 0, w) - adj2(y, r, c, 1, h);
        }
    }
    return out;
}

TensorField sym_derivative(const TensorField& w_field) {
    if (w_field.arity() != 2) {
        throw std::invalid_argument("sym_derivative: arity must be 2");
    }
    const int w = w_field.width(), h = w_field.height();
    require_min_grid(w, h);
    TensorField out(w, h, 4);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double d1w1 = fwd1(w_field, r, c, 0, w);
            const double d2w1 = fwd2(w_field, r, c, 0, h);
            const double d1w2 = fwd1(w_field, r, c, 1, w);
            const double d2w2 = fwd2(w_field, r, c, 1, h);
            const double cross = 0.5 * (d2w1 + d1w2);
            out.at(r, c, 0) = d1w1;
            out.at(r, c, 1) = cross;
            out.at(r, c, 2) = cross;
            out.at(r, c, 3) = d2w2;
        }
    }
    return out;
}

TensorField sym_derivative_adjoint(const TensorField& r_field) {
    if (r_field.arity() != 4) {
        throw std::invalid_argument("sym_derivative_adjoint: arity must be 4");
    }
    const int w = r_field.width(), h = r_field.height();
    require_min_grid(w, h);

    // <eps(w), r> = <w1, D1* r1 + D2* rm> + <w2, D1* rm + D2* r4>
    // with rm = (r2 + r3)/2; build the averaged cross component once.
    TensorField rm(w, h, 1);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            rm.at(r, c, 0) = 0.5 * (r_field.at(r, c, 1) + r_field.at(r, c, 2));
        }
    }

    TensorField out(w, h, 2);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            out.at(r, c, 0) = adj1(r_field, r, c, 0, w) + adj2(rm, r, c, 0, h);
            out.at(r, c, 1) = adj1(rm, r, c, 0, w) + adj2(r_field, r, c, 3, h);
        }
    }
    return out;
}

} // namespace tgvr
