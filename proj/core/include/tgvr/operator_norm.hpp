#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace tgvr {

/// A linear operator and its adjoint on flat coefficient vectors.
/// apply writes range_dim values, apply_adjoint writes domain_dim values.
struct LinearOperator {
    std::size_t domain_dim = 0;
    std::size_t range_dim = 0;
    std::function<void(std::span<const double>, std::span<double>)> apply;
    std::function<void(std::span<const double>, std::span<double>)> apply_adjoint;
};

struct OperatorNormOptions {
    double tol = 1e-9;       // relative settle tolerance of the Rayleigh estimate
    int max_iters = 50000;
    int min_iters = 10;
    std::uint64_t seed = 0x6a09e667f3bcc908ull;  // deterministic start vector
};

/// Largest singular value of the operator, by power iteration on A*A.
/// Requires apply/apply_adjoint to be an exact adjoint pair. Returns the raw
/// Rayleigh estimate (a lower bound on the true norm); callers sizing step
/// lengths should add their own safety margin. Throws NumericalError when the
/// estimate fails to settle within the iteration cap, which usually signals
/// an adjoint mismatch.
double operator_norm_estimate(const LinearOperator& op,
                              const OperatorNormOptions& opts = {});

} // namespace tgvr
