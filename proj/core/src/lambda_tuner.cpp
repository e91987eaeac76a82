#include "tgvr/lambda_tuner.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tgvr/convolver.hpp"
#include "tgvr/errors.hpp"
#include "tgvr/grid_ops.hpp"

namespace tgvr {

double kl_divergence(const ImageGrid& x, const ImageGrid& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("kl_divergence: shape mismatch");
    if (min_value(x) < 0.0 || min_value(y) < 0.0) {
        throw std::invalid_argument("kl_divergence: inputs must be nonnegative");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += y[i] - x[i] + x[i] * guarded_log(x[i]) - x[i] * guarded_log(y[i]);
    }
    return s;
}

int count_nonzero(const ImageGrid& z) {
    int m = 0;
    for (double v : z.values()) {
        if (v != 0.0) ++m;
    }
    return m;
}

MetaTuneResult tune_lambda(const ImageGrid& z, const BlurKernel& kernel,
                           SolverConfig cfg, const TuneConfig& tune) {
    if (tune.meta_iters < 1) throw std::invalid_argument("tune_lambda: meta_iters must be >= 1");
    if (!(tune.lambda0 > 0.0)) throw std::invalid_argument("tune_lambda: lambda0 must be > 0");

    MetaTuneResult out;
    out.nonzero_count = count_nonzero(z);
    if (out.nonzero_count == 0) {
        throw std::invalid_argument("tune_lambda: observation has no nonzero pixels");
    }
    const double half_m = 0.5 * out.nonzero_count;

    // The stacked operator does not depend on lambda; estimate its norm once.
    const double op_norm = stacked_operator_norm(kernel, z.width(), z.height(), cfg);

    double lambda = tune.lambda0;
    SolverState state;
    bool have_state = false;

    for (int l = 0; l < tune.meta_iters; ++l) {
        if (!(lambda >= tune.lambda_min) || !(lambda <= tune.lambda_max)) {
            throw NumericalError("tune_lambda: lambda escaped [" +
                                 std::to_string(tune.lambda_min) + ", " +
                                 std::to_string(tune.lambda_max) +
                                 "] at meta-iteration " + std::to_string(l) +
                                 " (lambda = " + std::to_string(lambda) + ")");
        }
        cfg.lambda = lambda;
        RestorationResult res =
            cp_restore(z, kernel, cfg, (tune.warm_start && have_state) ? &state : nullptr, op_norm);

        const double ratio = res.kl_value / half_m;
        out.lambda_trace.push_back(lambda);
        out.kl_ratio_trace.push_back(ratio);
        out.total_inner_iterations += res.iterations;
        out.meta_iterations = l + 1;

        if (tune.warm_start) {
            state = SolverState{res.u_hat, res.w_hat, res.p, res.q, res.r};
            have_state = true;
        }
        out.final_result = std::move(res);

        if (tune.ratio_tol > 0.0 && std::abs(ratio - 1.0) < tune.ratio_tol) break;
        lambda *= ratio;
    }
    return out;
}

MetaTuneResult tune_lambda(const ImageGrid& z, const BlurKernel& kernel,
                           const SolverConfig& cfg, int meta_iters, double lambda0) {
    TuneConfig tune;
    tune.meta_iters = meta_iters;
    tune.lambda0 = lambda0;
    return tune_lambda(z, kernel, cfg, tune);
}

} // namespace tgvr
