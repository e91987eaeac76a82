#pragma once

#include <vector>

#include "tgvr/solver.hpp"

namespace tgvr {

/// Kullback-Leibler divergence for count data:
///   KL(x, y) = sum(y - x + x .* log(x) - x .* log(y))
/// with guarded logs. Inputs must be nonnegative.
double kl_divergence(const ImageGrid& x, const ImageGrid& y);

/// Exact count of pixels with value != 0.
int count_nonzero(const ImageGrid& z);

struct TuneConfig {
    int meta_iters = 20;
    double lambda0 = 1.0;
    bool warm_start = true;   // carry primal/dual state across meta-iterations
    double ratio_tol = 0.01;  // stop early when |KL ratio - 1| < ratio_tol; 0 disables
    double lambda_min = 1e-8;
    double lambda_max = 1e8;
};

struct MetaTuneResult {
    std::vector<double> lambda_trace;    // lambda used at each meta-iteration
    std::vector<double> kl_ratio_trace;  // KL(z, K u_hat) / (M/2) it produced
    RestorationResult final_result;
    int meta_iterations = 0;
    int nonzero_count = 0;  // M
    long long total_inner_iterations = 0;
};

/// Discrepancy-principle selection of the data-fidelity weight for pure
/// Poisson degradations. Each meta-iteration restores with the current
/// lambda, measures the KL ratio KL(z, K u_hat) / (M/2) with M the number of
/// nonzero observed pixels, and rescales lambda by that ratio; at the
/// matched-discrepancy fixed point the ratio is 1. cfg.lambda is ignored in
/// favour of the trace. Aborts with NumericalError if lambda escapes
/// [lambda_min, lambda_max].
MetaTuneResult tune_lambda(const ImageGrid& z, const BlurKernel& kernel,
                           SolverConfig cfg, const TuneConfig& tune = {});

/// Convenience overload matching the meta-iteration count and start value.
MetaTuneResult tune_lambda(const ImageGrid& z, const BlurKernel& kernel,
                           const SolverConfig& cfg, int meta_iters, double lambda0);

} // namespace tgvr
