#pragma once

#include <utility>
#include <vector>

#include "xicor/models.hpp"
#include "xicor/resample.hpp"
#include "xicor/truth.hpp"

namespace xicor {

// Per-(model, n) aggregates of one estimator against the true xi.
// variance is the population variance (divide by N), so the exact identity
// mse = bias^2 + variance holds.
struct StudyReport {
    ModelSpec model;
    int n = 0;
    int replications = 0; // N
    Estimator estimator = Estimator::Raw;
    double xi_truth = 0.0;
    double mean_estimate = 0.0;
    double bias = 0.0;
    double mse = 0.0;
    double variance = 0.0;
};

struct CoverageReport {
    ModelSpec model;
    int n = 0;
    int replications = 0; // N trials
    int bootstrap_replicates = 0; // R per trial
    IntervalMethod method = IntervalMethod::MOutOfN;
    Estimator estimator = Estimator::Normalized;
    double conf = 0.9;
    double xi_truth = 0.0;
    double coverage = 0.0; // fraction of trials whose interval contains xi_truth
    double binom_se = 0.0; // sqrt(coverage (1-coverage) / N)
    double mean_width = 0.0;
};

// Ordinary least squares of log variance on log n: log Var = log_V + gamma log n.
struct LogLogFit {
    double intercept = 0.0; // log V
    double slope = 0.0;     // gamma
    double rss = 0.0;       // residual sum of squares
};

struct VarianceFit {
    ModelSpec model;
    Estimator estimator = Estimator::Raw;
    std::vector<int> n_grid;
    std::vector<double> variances; // empirical Var(xi_n) per grid point
    double log_V = 0.0;
    double gamma = 0.0;
    double rss = 0.0;
};

// Derivation of the per-trial seed: hash(master, model id, n, trial index).
// Appending trials never perturbs earlier ones.
Seed trial_seed(Seed master, int model_id, int n, std::size_t trial);

// Simulates N samples and aggregates both estimators (shared tie-break draws
// per sample) against xi_true. Deterministic in (spec, n, N, seed) and
// independent of the thread count.
std::pair<StudyReport, StudyReport> run_bias_mse(const ModelSpec& spec, int n, int N, Seed seed,
                                                 unsigned threads = 1);

// Fraction of N independent trials whose interval covers xi_true.
CoverageReport run_coverage(const ModelSpec& spec, int n, int N, int R, IntervalMethod method,
                            double conf, Estimator estimator, Seed seed, unsigned threads = 1);

LogLogFit fit_log_log(const std::vector<double>& log_x, const std::vector<double>& log_y);

// Empirical Var(xi_n) over an n grid with the fitted power law.
VarianceFit variance_scaling_fit(const ModelSpec& spec, const std::vector<int>& n_grid, int N,
                                 Estimator estimator, Seed seed, unsigned threads = 1);

} // namespace xicor
