#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "tgvr/diff_ops.hpp"
#include "tgvr/grid_ops.hpp"
#include "tgvr/operator_norm.hpp"

#include "support/oracles.hpp"
#include "support/random_fields.hpp"

using namespace tgvr;

namespace {

double rel_err(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(a - b) / scale;
}

} // namespace

TEST_CASE("gradient of a constant image vanishes") {
    ImageGrid c(6, 5, 3.25);
    TensorField g = gradient(c);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == 0.0);
    ImageGrid d = divergence_image(g);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == 0.0);
}

TEST_CASE("gradient of a column ramp") {
    ImageGrid x(4, 4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) x(r, c) = static_cast<double>(c);
    }
    TensorField g = gradient(x);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            CHECK(g.at(r, c, 0) == (c < 3 ? 1.0 : 0.0));
            CHECK(g.at(r, c, 1) == 0.0);
        }
    }
}

TEST_CASE("divergence is the exact negative adjoint of gradient") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const int w = 2 + static_cast<int>(rng.next_double() * 8);
        const int h = 2 + static_cast<int>(rng.next_double() * 8);
        ImageGrid x = testing::random_grid(w, h, rng);
        TensorField y = testing::random_field(w, h, 2, rng);
        const double lhs = dot(gradient(x), y);
        const double rhs = -dot(as_tensor(x), as_tensor(divergence_image(y)));
        CHECK(rel_err(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("tensor gradient and divergence are adjoint (arity 2)") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        TensorField x = testing::random_field(6, 6, 2, rng);
        TensorField y = testing::random_field(6, 6, 4, rng);
        const double lhs = dot(gradient(x), y);
        const double rhs = -dot(x, divergence(y));
        CHECK(rel_err(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("gradient is linear") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        ImageGrid x = testing::random_grid(7, 5, rng);
        ImageGrid y = testing::random_grid(7, 5, rng);
        const double a = -2.0 + 4.0 * rng.next_double();
        const double b = -2.0 + 4.0 * rng.next_double();
        TensorField lhs = gradient(lincomb(a, x, b, y));
        TensorField rhs = lincomb(a, gradient(x), b, gradient(y));
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12 * std::max(1.0, std::abs(rhs[i])));
        }
    }
}

TEST_CASE("sym_derivative basics") {
    TensorField c(5, 5, 2, 1.5);
    TensorField e = sym_derivative(c);
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i] == 0.0);

    SplitMix64 rng(5);
    TensorField w = testing::random_field(6, 6, 2, rng);
    TensorField ew = sym_derivative(w);
    for (int r = 0; r < 6; ++r) {
        for (int col = 0; col < 6; ++col) {
            CHECK(ew.at(r, col, 1) == ew.at(r, col, 2));  // symmetric by construction
        }
    }
}

TEST_CASE("sym_derivative trace equals the diagonal forward differences") {
    SplitMix64 rng(6);
    TensorField w = testing::random_field(8, 7, 2, rng);
    TensorField ew = sym_derivative(w);
    for (int r = 0; r < 7; ++r) {
        for (int c = 0; c < 8; ++c) {
            const double d1w1 = c + 1 < 8 ? w.at(r, c + 1, 0) - w.at(r, c, 0) : 0.0;
            const double d2w2 = r + 1 < 7 ? w.at(r + 1, c, 1) - w.at(r, c, 1) : 0.0;
            CHECK(ew.at(r, c, 0) + ew.at(r, c, 3) ==
                  doctest::Approx(d1w1 + d2w2).epsilon(1e-14));
        }
    }
}

TEST_CASE("sym_derivative_adjoint is the exact adjoint") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 25; ++trial) {
        const int w = 2 + static_cast<int>(rng.next_double() * 8);
        const int h = 2 + static_cast<int>(rng.next_double() * 8);
        TensorField wf = testing::random_field(w, h, 2, rng);
        TensorField r = testing::random_field(w, h, 4, rng);
        const double lhs = dot(sym_derivative(wf), r);
        const double rhs = dot(wf, sym_derivative_adjoint(r));
        CHECK(rel_err(lhs, rhs) <= 1e-12);
    }

    TensorField zero(4, 4, 4, 0.0);
    TensorField az = sym_derivative_adjoint(zero);
    for (std::size_t i = 0; i < az.size(); ++i) CHECK(az[i] == 0.0);
}

TEST_CASE("sym_derivative_adjoint matches the dense transpose on 3x3") {
    const int n = 3;
    LinearOperator eps;
    eps.domain_dim = 2 * n * n;
    eps.range_dim = 4 * n * n;
    eps.apply = [n](std::span<const double> x, std::span<double> y) {
        TensorField w(n, n, 2);
        std::copy(x.begin(), x.end(), w.values().begin());
        TensorField e = sym_derivative(w);
        std::copy(e.values().begin(), e.values().end(), y.begin());
    };
    auto m = testing::dense_matrix(eps);

    // r with only the two cross components set, equal to each other.
    SplitMix64 rng(11);
    TensorField r(n, n, 4);
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const double v = rng.next_double() - 0.5;
            r.at(row, col, 1) = v;
            r.at(row, col, 2) = v;
        }
    }
    TensorField got = sym_derivative_adjoint(r);

    // transpose multiply
    std::vector<double> expect(eps.domain_dim, 0.0);
    for (std::size_t i = 0; i < eps.range_dim; ++i) {
        for (std::size_t j = 0; j < eps.domain_dim; ++j) {
            expect[j] += m[i][j] * r[i];
        }
    }
    for (std::size_t j = 0; j < eps.domain_dim; ++j) {
        CHECK(got[j] == doctest::Approx(expect[j]).epsilon(1e-12));
    }
}

TEST_CASE("gradient norm stays below the classical bound") {
    for (int n : {8, 16, 33}) {
        LinearOperator grad_op;
        grad_op.domain_dim = static_cast<std::size_t>(n) * n;
        grad_op.range_dim = 2 * grad_op.domain_dim;
        grad_op.apply = [n](std::span<const double> x, std::span<double> y) {
            ImageGrid u(n, n);
            std::copy(x.begin(), x.end(), u.values().begin());
            TensorField g = gradient(u);
            std::copy(g.values().begin(), g.values().end(), y.begin());
        };
        grad_op.apply_adjoint = [n](std::span<const double> y, std::span<double> x) {
            TensorField f(n, n, 2);
            std::copy(y.begin(), y.end(), f.values().begin());
            ImageGrid d = divergence_image(f);
            for (std::size_t i = 0; i < d.size(); ++i) x[i] = -d[i];
        };
        const double est = operator_norm_estimate(grad_op);
        CHECK(est * est <= 8.0 + 1e-6);
    }
}
