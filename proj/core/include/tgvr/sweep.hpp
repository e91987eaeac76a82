#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tgvr/lambda_tuner.hpp"
#include "tgvr/solver.hpp"

namespace tgvr {

/// One row of the experiment sweep: degradation level, input/output quality,
/// tuned regularization weight and bookkeeping.
struct MetricsRow {
    double beta = 0.0;
    double snr_in = 0.0;   // dB, observation vs scaled ground truth
    double snr_out = 0.0;  // dB, restoration vs scaled ground truth
    double lambda_final = 0.0;
    double kl_ratio_final = 0.0;
    long long iterations_total = 0;
    double wall_time_s = 0.0;
    std::string mode;  // "TV" or "TGV"
    std::uint64_t seed = 0;
    std::string error;  // empty on success
};

struct SweepConfig {
    int width = 128;
    int height = 128;
    std::vector<double> betas;  // empty -> log-spaced grid below
    int beta_count = 13;
    double beta_min = 1e-2;
    double beta_max = 1e2;
    double psf_sigma = 1.17;
    std::uint64_t base_seed = 424242;  // per-beta seed = base_seed + beta index
    int meta_iters = 20;
    double lambda0 = 1.0;
    bool run_tv = true;
    bool run_tgv = true;
    SolverConfig solver;       // mode is overridden per row
    int threads = 0;           // 0 -> hardware concurrency
    bool record_wall_time = true;  // false writes 0, for byte-stable CSV output
};

/// Log-spaced activity grid, count values from beta_min to beta_max inclusive.
std::vector<double> beta_grid(int count, double beta_min, double beta_max);

/// For each beta and each enabled mode: degrade the phantom, tune lambda,
/// restore, and record a MetricsRow. Per-row failures land in the row's
/// error field and the sweep continues. Rows come back sorted by
/// (mode, beta); jobs run on a small worker pool with per-row seeds, so the
/// results do not depend on scheduling.
std::vector<MetricsRow> run_experiment_sweep(const SweepConfig& cfg);

/// Versioned CSV with a fixed column order.
void write_metrics_csv(std::ostream& os, const std::vector<MetricsRow>& rows);
std::string metrics_csv(const std::vector<MetricsRow>& rows);

} // namespace tgvr
