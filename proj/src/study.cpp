#include "xicor/study.hpp"

#include <algorithm>
#include <cmath>

#include "xicor/parallel.hpp"

namespace xicor {

Seed trial_seed(Seed master, int model_id, int n, std::size_t trial) {
    return master.with(seed_tag::trial)
        .with(static_cast<std::uint64_t>(model_id))
        .with(static_cast<std::uint64_t>(n))
        .with(trial);
}

namespace {

StudyReport aggregate(const ModelSpec& spec, int n, int N, Estimator estimator, double truth,
                      const std::vector<double>& estimates) {
    StudyReport report;
    report.model = spec;
    report.n = n;
    report.replications = N;
    report.estimator = estimator;
    report.xi_truth = truth;

    double mean = 0.0;
    for (double v : estimates) mean += v;
    mean /= static_cast<double>(N);

    double variance = 0.0;
    double mse = 0.0;
    for (double v : estimates) {
        variance += (v - mean) * (v - mean);
        mse += (v - truth) * (v - truth);
    }
    report.mean_estimate = mean;
    report.bias = mean - truth;
    report.variance = variance / static_cast<double>(N);
    report.mse = mse / static_cast<double>(N);
    return report;
}

} // namespace

std::pair<StudyReport, StudyReport> run_bias_mse(const ModelSpec& spec, int n, int N, Seed seed,
                                                 unsigned threads) {
    spec.validate();
    if (n < 2) throw precondition_error("study: need n >= 2");
    if (N < 100) throw precondition_error("study: need N >= 100 replications");

    const double truth = xi_true(spec);
    std::vector<double> raw(N), normalized(N);
    parallel_for(static_cast<std::size_t>(N), threads, [&](std::size_t t) {
        const Seed trial = trial_seed(seed, spec.id, n, t);
        const PairedSample sample = sample_model(spec, n, trial);
        const XiPair value = xi_both(sample, trial.with(seed_tag::statistic));
        raw[t] = value.raw;
        normalized[t] = value.normalized;
    });

    return {aggregate(spec, n, N, Estimator::Raw, truth, raw),
            aggregate(spec, n, N, Estimator::Normalized, truth, normalized)};
}

CoverageReport run_coverage(const ModelSpec& spec, int n, int N, int R, IntervalMethod method,
                            double conf, Estimator estimator, Seed seed, unsigned threads) {
    spec.validate();
    if (n < 9) throw precondition_error("coverage study: need n >= 9");
    if (N < 100) throw precondition_error("coverage study: need N >= 100 trials");
    if (R < 200) throw precondition_error("coverage study: need R >= 200 replicates");
    if (!(conf > 0.0 && conf < 1.0))
        throw precondition_error("coverage study: confidence level must lie in (0,1)");

    const double truth = xi_true(spec);
    std::vector<char> covered(N, 0);
    std::vector<double> widths(N, 0.0);
    parallel_for(static_cast<std::size_t>(N), threads, [&](std::size_t t) {
        const Seed trial = trial_seed(seed, spec.id, n, t);
        const PairedSample sample = sample_model(spec, n, trial);
        const Seed ci_seed = trial.with(seed_tag::interval);
        IntervalEstimate iv;
        switch (method) {
            case IntervalMethod::MOutOfN:
                iv = ci_m_out_of_n(sample, conf, R, std::nullopt, ci_seed, estimator);
                break;
            case IntervalMethod::NormalDK:
                iv = ci_normal_dk(sample, conf, R, ci_seed, estimator);
                break;
            case IntervalMethod::Percentile:
                iv = ci_n_out_of_n(sample, conf, R, NOutOfNVariant::Percentile, ci_seed, estimator);
                break;
            case IntervalMethod::BCa:
                iv = ci_n_out_of_n(sample, conf, R, NOutOfNVariant::BCa, ci_seed, estimator);
                break;
        }
        covered[t] = (truth >= iv.lower && truth <= iv.upper) ? 1 : 0;
        widths[t] = iv.upper - iv.lower;
    });

    CoverageReport report;
    report.model = spec;
    report.n = n;
    report.replications = N;
    report.bootstrap_replicates = R;
    report.method = method;
    report.estimator = estimator;
    report.conf = conf;
    report.xi_truth = truth;
    long hits = 0;
    double width_sum = 0.0;
    for (int t = 0; t < N; ++t) {
        hits += covered[t];
        width_sum += widths[t];
    }
    report.coverage = static_cast<double>(hits) / static_cast<double>(N);
    report.binom_se = std::sqrt(report.coverage * (1.0 - report.coverage) / static_cast<double>(N));
    report.mean_width = width_sum / static_cast<double>(N);
    return report;
}

LogLogFit fit_log_log(const std::vector<double>& log_x, const std::vector<double>& log_y) {
    if (log_x.size() != log_y.size() || log_x.size() < 2)
        throw precondition_error("fit: need at least 2 matching points");
    const auto n = static_cast<double>(log_x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < log_x.size(); ++i) {
        mx += log_x[i];
        my += log_y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_x.size(); ++i) {
        sxx += (log_x[i] - mx) * (log_x[i] - mx);
        sxy += (log_x[i] - mx) * (log_y[i] - my);
    }
    if (sxx == 0.0) throw precondition_error("fit: degenerate grid (no x spread)");

    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < log_x.size(); ++i) {
        const double r = log_y[i] - (fit.intercept + fit.slope * log_x[i]);
        fit.rss += r * r;
    }
    return fit;
}

VarianceFit variance_scaling_fit(const ModelSpec& spec, const std::vector<int>& n_grid, int N,
                                 Estimator estimator, Seed seed, unsigned threads) {
    spec.validate();
    if (N < 100) throw precondition_error("study: need N >= 100 replications");
    std::vector<int> grid(n_grid);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.size() < 4)
        throw precondition_error("variance fit: need at least 4 distinct grid points");
    if (grid.front() < 2) throw precondition_error("variance fit: need n >= 2");
    if (static_cast<double>(grid.back()) < 10.0 * static_cast<double>(grid.front()))
        throw precondition_error("variance fit: grid must span at least one decade");

    VarianceFit fit;
    fit.model = spec;
    fit.estimator = estimator;
    fit.n_grid = grid;
    fit.variances.resize(grid.size());

    for (std::size_t g = 0; g < grid.size(); ++g) {
        const int n = grid[g];
        std::vector<double> values(N);
        parallel_for(static_cast<std::size_t>(N), threads, [&](std::size_t t) {
            const Seed trial = trial_seed(seed, spec.id, n, t);
            const PairedSample sample = sample_model(spec, n, trial);
            values[t] = estimate(estimator, sample, trial.with(seed_tag::statistic));
        });
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(N);
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        fit.variances[g] = var / static_cast<double>(N);
    }

    std::vector<double> lx(grid.size()), ly(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (!(fit.variances[g] > 0.0))
            throw numeric_error("variance fit: zero empirical variance at n = " +
                                std::to_string(grid[g]));
        lx[g] = std::log(static_cast<double>(grid[g]));
        ly[g] = std::log(fit.variances[g]);
    }
    const LogLogFit line = fit_log_log(lx, ly);
    fit.log_V = line.intercept;
    fit.gamma = line.slope;
    fit.rss = line.rss;
    return fit;
}

} // namespace xicor
