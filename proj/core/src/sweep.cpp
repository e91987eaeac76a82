#include "tgvr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tgvr/degrade.hpp"
#include "tgvr/grid_ops.hpp"
#include "tgvr/metrics.hpp"
#include "tgvr/phantom.hpp"

namespace tgvr {
namespace {

std::string csv_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        out.push_back((c == ',' || c == '\n' || c == '\r') ? ';' : c);
    }
    return out;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Job {
    RegMode mode;
    int beta_index;
    double beta;
};

} // namespace

std::vector<double> beta_grid(int count, double beta_min, double beta_max) {
    if (count < 1) throw std::invalid_argument("beta_grid: count must be >= 1");
    if (!(beta_min > 0.0) || !(beta_max >= beta_min)) {
        throw std::invalid_argument("beta_grid: need 0 < beta_min <= beta_max");
    }
    std::vector<double> betas(count);
    if (count == 1) {
        betas[0] = beta_min;
        return betas;
    }
    const double l0 = std::log10(beta_min);
    const double l1 = std::log10(beta_max);
    for (int i = 0; i < count; ++i) {
        betas[i] = std::pow(10.0, l0 + (l1 - l0) * i / (count - 1.0));
    }
    return betas;
}

std::vector<MetricsRow> run_experiment_sweep(const SweepConfig& cfg) {
    const std::vector<double> betas =
        cfg.betas.empty() ? beta_grid(cfg.beta_count, cfg.beta_min, cfg.beta_max) : cfg.betas;

    std::vector<Job> jobs;  // (mode, beta) in final row order: TGV block, then TV
    if (cfg.run_tgv) {
        for (std::size_t i = 0; i < betas.size(); ++i) {
            jobs.push_back({RegMode::TGV, static_cast<int>(i), betas[i]});
        }
    }
    if (cfg.run_tv) {
        for (std::size_t i = 0; i < betas.size(); ++i) {
            jobs.push_back({RegMode::TV, static_cast<int>(i), betas[i]});
        }
    }

    const ImageGrid phantom = shepp_logan_modified(cfg.width, cfg.height);
    std::vector<MetricsRow> rows(jobs.size());

    auto run_job = [&](std::size_t j) {
        const Job& job = jobs[j];
        MetricsRow& row = rows[j];
        row.beta = job.beta;
        row.mode = job.mode == RegMode::TGV ? "TGV" : "TV";
        row.seed = cfg.base_seed + static_cast<std::uint64_t>(job.beta_index);
        try {
            DegradationSpec spec;
            spec.beta = job.beta;
            spec.psf_sigma = cfg.psf_sigma;
            spec.rng_seed = row.seed;
            const ImageGrid scaled_truth = scale_activity(phantom, job.beta);
            Degraded deg = degrade(phantom, spec);
            row.snr_in = snr(deg.z, scaled_truth);

            SolverConfig solver = cfg.solver;
            solver.mode = job.mode;
            TuneConfig tune;
            tune.meta_iters = cfg.meta_iters;
            tune.lambda0 = cfg.lambda0;

            const auto t0 = std::chrono::steady_clock::now();
            MetaTuneResult res = tune_lambda(deg.z, deg.kernel, solver, tune);
            const auto t1 = std::chrono::steady_clock::now();

            row.snr_out = snr(res.final_result.u_hat, scaled_truth);
            row.lambda_final = res.lambda_trace.back();
            row.kl_ratio_final = res.kl_ratio_trace.back();
            row.iterations_total = res.total_inner_iterations;
            if (cfg.record_wall_time) {
                row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    int threads = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));

    if (threads == 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t j = next.fetch_add(1);
                    if (j >= jobs.size()) return;
                    run_job(j);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return rows;
}

void write_metrics_csv(std::ostream& os, const std::vector<MetricsRow>& rows) {
    os << "# tgvr-metrics-v1\n";
    os << "beta,snr_in_db,snr_out_db,lambda_final,kl_ratio_final,"
          "iterations_total,wall_time_s,mode,seed,error\n";
    for (const MetricsRow& r : rows) {
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.3f", r.wall_time_s);
        os << format_double(r.beta) << ',' << format_double(r.snr_in) << ','
           << format_double(r.snr_out) << ',' << format_double(r.lambda_final) << ','
           << format_double(r.kl_ratio_final) << ',' << r.iterations_total << ',' << wall
           << ',' << r.mode << ',' << r.seed << ',' << csv_escape(r.error) << '\n';
    }
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
    std::ostringstream os;
    write_metrics_csv(os, rows);
    return os.str();
}

} // namespace tgvr
