#include "tgvr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tgvr/convolver.hpp"
#include "tgvr/diff_ops.hpp"
#include "tgvr/errors.hpp"
#include "tgvr/grid_ops.hpp"
#include "tgvr/operator_norm.hpp"
#include "tgvr/prox.hpp"

namespace tgvr {
namespace {

void validate_config(const SolverConfig& cfg) {
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("SolverConfig: alpha must be > 0");
    if (!(cfg.lambda > 0.0)) throw std::invalid_argument("SolverConfig: lambda must be > 0");
    if (!(cfg.step_safety > 0.0 && cfg.step_safety < 1.0)) {
        throw std::invalid_argument("SolverConfig: step_safety must be in (0, 1)");
    }
    if (cfg.max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
    if (!(cfg.rel_tol >= 0.0)) throw std::invalid_argument("SolverConfig: rel_tol must be >= 0");
}

double poisson_kl(const ImageGrid& x, const ImageGrid& y_clamped) {
    // KL(x, y) = sum(y - x + x log x - x log y), guarded logs.
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xv = x[i];
        const double yv = y_clamped[i] > 0.0 ? y_clamped[i] : 0.0;
        s += yv - xv + xv * guarded_log(xv) - xv * guarded_log(yv);
    }
    return s;
}

double data_term(const ImageGrid& ku, const ImageGrid& z, double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < ku.size(); ++i) {
        s += ku[i] - z[i] * guarded_log(ku[i]);
    }
    return lambda * s;
}

double objective_from_parts(const ImageGrid& ku, const TensorField& grad_u,
                            const TensorField& w, const TensorField& eps_w,
                            const ImageGrid& z, const SolverConfig& cfg) {
    double obj = data_term(ku, z, cfg.lambda);
    if (cfg.mode == RegMode::TGV) {
        obj += lpq_norm(subtract(grad_u, w), 2.0, 1.0);
        obj += cfg.alpha * lpq_norm(eps_w, 2.0, 1.0);
    } else {
        obj += lpq_norm(grad_u, 2.0, 1.0);
    }
    return obj;
}

void pack(std::span<double> dst, std::span<const double> src, std::size_t& off) {
    std::copy(src.begin(), src.end(), dst.begin() + off);
    off += src.size();
}

void unpack(std::span<const double> src, std::span<double> dst, std::size_t& off) {
    std::copy(src.begin() + off, src.begin() + off + dst.size(), dst.begin());
    off += dst.size();
}

} // namespace

double stacked_operator_norm(const BlurKernel& kernel, int width, int height,
                             const SolverConfig& cfg, double tol) {
    const Convolver& conv = kernel.plan_for(width, height, cfg.padding);
    const std::size_t n = static_cast<std::size_t>(width) * height;
    const bool tgv = cfg.mode == RegMode::TGV;

    LinearOperator op;
    op.domain_dim = tgv ? 3 * n : n;
    op.range_dim = tgv ? 7 * n : 3 * n;
    op.apply = [&, tgv, width, height](std::span<const double> x, std::span<double> y) {
        ImageGrid u(width, height);
        std::size_t off = 0;
        unpack(x, u.values(), off);
        TensorField w(width, height, 2);
        if (tgv) unpack(x, w.values(), off);

        const ImageGrid ku = conv.apply(u);
        TensorField gu = gradient(u);
        off = 0;
        pack(y, ku.values(), off);
        if (tgv) {
            pack(y, subtract(gu, w).values(), off);
            pack(y, sym_derivative(w).values(), off);
        } else {
            pack(y, gu.values(), off);
        }
    };
    op.apply_adjoint = [&, tgv, width, height](std::span<const double> y, std::span<double> x) {
        ImageGrid p(width, height);
        TensorField q(width, height, 2);
        std::size_t off = 0;
        unpack(y, p.values(), off);
        unpack(y, q.values(), off);
        TensorField r(width, height, 4);
        if (tgv) unpack(y, r.values(), off);

        // L*(p, q, r) = (K* p - div q, -q + eps*(r))
        ImageGrid xu = subtract(conv.apply_adjoint(p), divergence_image(q));
        off = 0;
        pack(x, xu.values(), off);
        if (tgv) {
            const TensorField xw = subtract(sym_derivative_adjoint(r), q);
            pack(x, xw.values(), off);
        }
    };

    OperatorNormOptions opts;
    opts.tol = tol;
    return operator_norm_estimate(op, opts);
}

std::pair<double, double> adapt_steps(double primal_residual, double dual_residual,
                                      double tau, double sigma) {
    if (!(primal_residual >= 0.0) || !(dual_residual >= 0.0)) {
        throw std::invalid_argument("adapt_steps: residuals must be nonnegative");
    }
    constexpr double phi = 1.5;
    if (primal_residual > 10.0 * dual_residual) {
        return {tau / phi, sigma * phi};
    }
    if (dual_residual > 10.0 * primal_residual) {
        return {tau * phi, sigma / phi};
    }
    return {tau, sigma};
}

double objective_value(const ImageGrid& u, const TensorField& w, const ImageGrid& z,
                       const BlurKernel& kernel, const SolverConfig& cfg) {
    const Convolver& conv = kernel.plan_for(u.width(), u.height(), cfg.padding);
    return objective_from_parts(conv.apply(u), gradient(u), w,
                                cfg.mode == RegMode::TGV ? sym_derivative(w)
                                                         : TensorField(u.width(), u.height(), 4),
                                z, cfg);
}

ObjectiveBreakdown objective_breakdown(const ImageGrid& u, const TensorField& w,
                                       const ImageGrid& z, const BlurKernel& kernel,
                                       const SolverConfig& cfg) {
    const Convolver& conv = kernel.plan_for(u.width(), u.height(), cfg.padding);
    ObjectiveBreakdown b;
    b.data = data_term(conv.apply(u), z, cfg.lambda);
    if (cfg.mode == RegMode::TGV) {
        b.coupling = lpq_norm(subtract(gradient(u), w), 2.0, 1.0);
        b.smoothness = cfg.alpha * lpq_norm(sym_derivative(w), 2.0, 1.0);
    } else {
        b.coupling = lpq_norm(gradient(u), 2.0, 1.0);
    }
    b.total = b.data + b.coupling + b.smoothness;
    b.positivity_ok = min_value(u) >= -1e-6 * std::max(0.0, max_value(u));
    const double sz = grid_sum(z);
    b.photometry_ok = std::abs(grid_sum(u) - sz) <= 1e-8 * std::max(1.0, std::abs(sz));
    return b;
}

RestorationResult cp_restore(const ImageGrid& z, const BlurKernel& kernel,
                             const SolverConfig& cfg, const SolverState* warm_start,
                             double op_norm_hint) {
    validate_config(cfg);
    if (z.empty()) throw std::invalid_argument("cp_restore: empty observation");
    if (min_value(z) < 0.0) throw std::invalid_argument("cp_restore: observation must be nonnegative");
    const double sum_z = grid_sum(z);
    if (!(sum_z > 0.0)) throw std::invalid_argument("cp_restore: observation must have positive total");

    const int W = z.width(), H = z.height();
    const bool tgv = cfg.mode == RegMode::TGV;
    const Convolver& conv = kernel.plan_for(W, H, cfg.padding);

    const double op_norm = op_norm_hint > 0.0
                               ? op_norm_hint
                               : stacked_operator_norm(kernel, W, H, cfg, 1e-8);
    // Raw power-iteration estimates sit slightly below the true norm; the
    // 1.01 factor keeps tau*sigma*||L||^2 < 1.
    double tau = cfg.step_safety / (1.01 * op_norm);
    double sigma = tau;

    ImageGrid u = warm_start ? warm_start->u : z;
    TensorField w = warm_start ? warm_start->w : TensorField(W, H, 2);
    ImageGrid p = warm_start ? warm_start->p : ImageGrid(W, H, 0.0);
    TensorField q = warm_start ? warm_start->q : TensorField(W, H, 2);
    TensorField r = warm_start ? warm_start->r : TensorField(W, H, 4);
    if (warm_start) {
        if (!u.same_shape(z) || !w.same_grid(z) || !p.same_shape(z) || !q.same_grid(z) ||
            !r.same_grid(z) || w.arity() != 2 || q.arity() != 2 || r.arity() != 4) {
            throw std::invalid_argument("cp_restore: warm start state does not match observation");
        }
    }

    // The operators applied to the over-relaxed variables are formed from
    // cached applications to the plain iterates: L(2 x_new - x_old) =
    // 2 L(x_new) - L(x_old).
    ImageGrid ku_cur = conv.apply(u);
    ImageGrid ku_prev = ku_cur;
    TensorField gu_cur = gradient(u);
    TensorField gu_prev = gu_cur;
    TensorField ew_cur = tgv ? sym_derivative(w) : TensorField(W, H, 4);
    TensorField ew_prev = ew_cur;
    TensorField w_prev = w;

    // Adjoint applications to the current duals, for the primal residual.
    ImageGrid adj_p_cur = conv.apply_adjoint(p);
    ImageGrid div_q_cur = divergence_image(q);
    TensorField epsadj_r_cur = tgv ? sym_derivative_adjoint(r) : TensorField(W, H, 2);

    RestorationResult res;
    res.op_norm = op_norm;
    res.objective_trace.reserve(static_cast<std::size_t>(cfg.max_iters));

    int iter = 0;
    bool converged = false;
    for (; iter < cfg.max_iters; ++iter) {
        // Dual steps, on the over-relaxed primal variables.
        const ImageGrid ku_bar = lincomb(2.0, ku_cur, -1.0, ku_prev);
        const TensorField gu_bar = lincomb(2.0, gu_cur, -1.0, gu_prev);
        const ImageGrid p_new =
            prox_poisson_conjugate(lincomb(1.0, p, sigma, ku_bar), sigma, cfg.lambda, z);

        TensorField q_arg = lincomb(1.0, q, sigma, gu_bar);
        if (tgv) {
            const TensorField w_bar = lincomb(2.0, w, -1.0, w_prev);
            q_arg = lincomb(1.0, q_arg, -sigma, w_bar);
        }
        const TensorField q_new = project_l2inf_ball(q_arg, 1.0);

        TensorField r_new = r;
        if (tgv) {
            const TensorField ew_bar = lincomb(2.0, ew_cur, -1.0, ew_prev);
            r_new = project_l2inf_ball(lincomb(1.0, r, sigma, ew_bar), cfg.alpha);
        }

        // Primal steps, with the updated duals.
        const ImageGrid adj_p_new = conv.apply_adjoint(p_new);
        const ImageGrid div_q_new = divergence_image(q_new);
        const ImageGrid u_new = prox_positivity_photometry(
            lincomb(1.0, u, tau, subtract(div_q_new, adj_p_new)), z);

        TensorField epsadj_r_new = epsadj_r_cur;
        TensorField w_new = w;
        if (tgv) {
            epsadj_r_new = sym_derivative_adjoint(r_new);
            w_new = lincomb(1.0, w, tau, subtract(q_new, epsadj_r_new));
        }

        // Cache updates for the next over-relaxation and the residuals.
        const ImageGrid ku_next = conv.apply(u_new);
        const TensorField gu_next = gradient(u_new);
        const TensorField ew_next = tgv ? sym_derivative(w_new) : ew_cur;

        const double nu_diff = l2_norm(subtract(u_new, u));
        const double nu = l2_norm(u);
        if (!std::isfinite(nu_diff) || !std::isfinite(nu)) {
            throw NumericalError("cp_restore: non-finite iterate at iteration " +
                                 std::to_string(iter + 1));
        }

        if (cfg.adapt_steps) {
            // Residual balancing (primal and dual residual norms of the
            // first-order optimality system).
            const ImageGrid pres_u =
                lincomb(1.0 / tau, subtract(u, u_new), -1.0,
                        subtract(subtract(adj_p_cur, adj_p_new),
                                 subtract(div_q_cur, div_q_new)));
            double pres_sq = dot(pres_u, pres_u);
            if (tgv) {
                TensorField pres_w =
                    lincomb(1.0 / tau, subtract(w, w_new), 1.0, subtract(q, q_new));
                pres_w = lincomb(1.0, pres_w, -1.0, subtract(epsadj_r_cur, epsadj_r_new));
                pres_sq += dot(pres_w, pres_w);
            }

            const ImageGrid dres_p =
                lincomb(1.0 / sigma, subtract(p, p_new), -1.0, subtract(ku_cur, ku_next));
            double dres_sq = dot(dres_p, dres_p);
            TensorField dres_q =
                lincomb(1.0 / sigma, subtract(q, q_new), -1.0, subtract(gu_cur, gu_next));
            if (tgv) dres_q = lincomb(1.0, dres_q, 1.0, subtract(w, w_new));
            dres_sq += dot(dres_q, dres_q);
            if (tgv) {
                const TensorField dres_r =
                    lincomb(1.0 / sigma, subtract(r, r_new), -1.0, subtract(ew_cur, ew_next));
                dres_sq += dot(dres_r, dres_r);
            }

            std::tie(tau, sigma) = adapt_steps(std::sqrt(pres_sq), std::sqrt(dres_sq), tau, sigma);
        }

        // Rotate state.
        ku_prev = ku_cur; ku_cur = ku_next;
        gu_prev = gu_cur; gu_cur = gu_next;
        ew_prev = ew_cur; ew_cur = ew_next;
        w_prev = w; w = w_new;
        u = u_new;
        p = p_new; q = q_new; r = r_new;
        adj_p_cur = adj_p_new; div_q_cur = div_q_new; epsadj_r_cur = epsadj_r_new;

        res.objective_trace.push_back(objective_from_parts(ku_cur, gu_cur, w, ew_cur, z, cfg));

        if (cfg.validate_iterates) {
            const double su = grid_sum(u);
            if (std::abs(su - sum_z) > 1e-8 * std::max(1.0, std::abs(sum_z))) {
                throw NumericalError("cp_restore: photometry drift at iteration " +
                                     std::to_string(iter + 1));
            }
            if (lpq_norm(q, 2.0, std::numeric_limits<double>::infinity()) > 1.0) {
                throw NumericalError("cp_restore: dual q left its unit ball");
            }
            if (tgv && lpq_norm(r, 2.0, std::numeric_limits<double>::infinity()) > cfg.alpha) {
                throw NumericalError("cp_restore: dual r left its alpha ball");
            }
        }

        if (nu > 0.0 && nu_diff / nu < cfg.rel_tol) {
            ++iter;
            converged = true;
            break;
        }
    }

    res.u_hat = u;
    if (cfg.post_clamp) {
        for (std::size_t i = 0; i < res.u_hat.size(); ++i) {
            if (res.u_hat[i] < 0.0) res.u_hat[i] = 0.0;
        }
        ku_cur = conv.apply(res.u_hat);
    }
    res.w_hat = w;
    res.p = p;
    res.q = q;
    res.r = r;
    res.iterations = iter;
    res.converged = converged;
    res.kl_value = poisson_kl(z, ku_cur);
    res.tau_final = tau;
    res.sigma_final = sigma;
    return res;
}

} // namespace tgvr
