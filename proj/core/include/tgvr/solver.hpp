#pragma once

#include <utility>
#include <vector>

#include "tgvr/blur_kernel.hpp"
#include "tgvr/image_grid.hpp"
#include "tgvr/tensor_field.hpp"

namespace tgvr {

/// Regularization flavor: first-order total variation, or second-order
/// total generalized variation with the auxiliary vector field w.
enum class RegMode { TV, TGV };

struct SolverConfig {
    RegMode mode = RegMode::TGV;
    double alpha = 2.0;        // weight of the second-order term
    double lambda = 1.0;       // data-fidelity weight, must be > 0
    double step_safety = 0.9;  // initial tau = sigma = step_safety / ||L||
    int max_iters = 2000;
    double rel_tol = 1e-5;     // relative primal change stopping threshold
    bool adapt_steps = true;   // residual-balancing step-size adaptation
    PaddingMode padding = PaddingMode::Replicate;
    bool post_clamp = false;   // clamp the returned image at zero
    bool validate_iterates = false;  // per-iteration constraint checks (testing aid)
};

/// Primal and dual iterates, usable to warm-start a subsequent solve.
struct SolverState {
    ImageGrid u;
    TensorField w;  // arity 2
    ImageGrid p;
    TensorField q;  // arity 2
    TensorField r;  // arity 4
};

struct RestorationResult {
    ImageGrid u_hat;
    TensorField w_hat;  // arity 2; zero in TV mode
    ImageGrid p;        // final dual states
    TensorField q;      // arity 2
    TensorField r;      // arity 4
    int iterations = 0;
    std::vector<double> objective_trace;  // objective after each iteration
    int trace_stride = 1;
    double kl_value = 0.0;  // KL(z, K u_hat) with the blurred estimate clamped at 0
    bool converged = false;
    double op_norm = 0.0;   // stacked operator norm estimate used for the steps
    double tau_final = 0.0;
    double sigma_final = 0.0;
};

/// Primal-dual restoration of a blurred, Poisson-noisy observation z.
///
/// Runs the Chambolle-Pock iteration on the saddle-point form of
///   min_u,w  lambda * sum(K u - z .* log(K u)) + ||grad u - w||_{2,1}
///            + alpha ||sym_derivative(w)||_{2,1}
/// subject to positivity and total-count preservation, using the updated
/// duals in the primal steps and over-relaxation 2 u^{n+1} - u^n.
/// Initial state is u = z with all other variables zero unless a warm start
/// is provided. Stops when the relative primal change drops below
/// cfg.rel_tol or after cfg.max_iters iterations.
///
/// op_norm_hint, when positive, skips the power-iteration norm estimate
/// (useful when solving repeatedly on the same grid and kernel).
RestorationResult cp_restore(const ImageGrid& z, const BlurKernel& kernel,
                             const SolverConfig& cfg,
                             const SolverState* warm_start = nullptr,
                             double op_norm_hint = 0.0);

/// Objective of the minimization above (without the constant count term).
/// TV mode ignores w and the second-order term.
double objective_value(const ImageGrid& u, const TensorField& w, const ImageGrid& z,
                       const BlurKernel& kernel, const SolverConfig& cfg);

struct ObjectiveBreakdown {
    double data = 0.0;        // lambda * sum(K u - z .* log(K u))
    double coupling = 0.0;    // ||grad u - w||_{2,1} (plain TV norm in TV mode)
    double smoothness = 0.0;  // alpha * ||sym_derivative(w)||_{2,1}
    double total = 0.0;
    bool positivity_ok = true;  // min(u) >= -1e-6 * max(u)
    bool photometry_ok = true;  // |sum(u) - sum(z)| <= 1e-8 * |sum(z)|
};

ObjectiveBreakdown objective_breakdown(const ImageGrid& u, const TensorField& w,
                                       const ImageGrid& z, const BlurKernel& kernel,
                                       const SolverConfig& cfg);

/// Residual-balancing step update: a 10x imbalance between primal and dual
/// residuals shifts the steps by a factor 1.5 while preserving the product
/// tau*sigma, so tau*sigma*||L||^2 < 1 stays true.
std::pair<double, double> adapt_steps(double primal_residual, double dual_residual,
                                      double tau, double sigma);

/// Norm of the stacked operator L(u, w) = (K u, grad u - w, sym_derivative(w))
/// (TGV) or L(u) = (K u, grad u) (TV) on the given grid.
double stacked_operator_norm(const BlurKernel& kernel, int width, int height,
                             const SolverConfig& cfg, double tol = 1e-9);

} // namespace tgvr
