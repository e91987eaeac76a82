#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "tgvr/diff_ops.hpp"
#include "tgvr/errors.hpp"
#include "tgvr/operator_norm.hpp"

#include "support/oracles.hpp"

using namespace tgvr;

namespace {

LinearOperator gradient_operator(int n) {
    LinearOperator op;
    op.domain_dim = static_cast<std::size_t>(n) * n;
    op.range_dim = 2 * op.domain_dim;
    op.apply = [n](std::span<const double> x, std::span<double> y) {
        ImageGrid u(n, n);
        std::copy(x.begin(), x.end(), u.values().begin());
        TensorField g = gradient(u);
        std::copy(g.values().begin(), g.values().end(), y.begin());
    };
    op.apply_adjoint = [n](std::span<const double> y, std::span<double> x) {
        TensorField f(n, n, 2);
        std::copy(y.begin(), y.end(), f.values().begin());
        ImageGrid d = divergence_image(f);
        for (std::size_t i = 0; i < d.size(); ++i) x[i] = -d[i];
    };
    return op;
}

} // namespace

TEST_CASE("identity operator has norm one") {
    LinearOperator op;
    op.domain_dim = op.range_dim = 37;
    op.apply = [](std::span<const double> x, std::span<double> y) {
        std::copy(x.begin(), x.end(), y.begin());
    };
    op.apply_adjoint = op.apply;
    CHECK(operator_norm_estimate(op) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero operator reports zero") {
    LinearOperator op;
    op.domain_dim = op.range_dim = 5;
    op.apply = [](std::span<const double>, std::span<double> y) {
        std::fill(y.begin(), y.end(), 0.0);
    };
    op.apply_adjoint = op.apply;
    CHECK(operator_norm_estimate(op) == 0.0);
}

TEST_CASE("gradient norm approaches sqrt(8) on a 64x64 grid") {
    const double est = operator_norm_estimate(gradient_operator(64));
    CHECK(std::abs(est - std::sqrt(8.0)) <= 1e-3);
}

TEST_CASE("power iteration matches a dense SVD on 8x8") {
    LinearOperator op = gradient_operator(8);
    auto m = testing::dense_matrix(op);
    Eigen::MatrixXd a(op.range_dim, op.domain_dim);
    for (std::size_t i = 0; i < op.range_dim; ++i) {
        for (std::size_t j = 0; j < op.domain_dim; ++j) a(i, j) = m[i][j];
    }
    const double sigma_max = Eigen::BDCSVD<Eigen::MatrixXd>(a).singularValues()(0);

    OperatorNormOptions opts;
    opts.tol = 1e-13;
    opts.max_iters = 200000;
    const double est = operator_norm_estimate(op, opts);
    CHECK(std::abs(est - sigma_max) <= 1e-6);
}

TEST_CASE("an impossible settle tolerance raises the non-convergence error") {
    LinearOperator op = gradient_operator(6);
    OperatorNormOptions opts;
    opts.tol = 0.0;
    opts.max_iters = 4;
    opts.min_iters = 0;
    CHECK_THROWS_AS(operator_norm_estimate(op, opts), NumericalError);
}

TEST_CASE("incomplete operators are rejected") {
    LinearOperator op;
    CHECK_THROWS_AS(operator_norm_estimate(op), std::invalid_argument);
}
