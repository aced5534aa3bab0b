#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "xicor/rankcore.hpp"
#include "xicor/rng.hpp"

namespace xicor {

enum class ResampleKind { NOutOfNWithReplacement, MOutOfNWithoutReplacement };

struct ResampleScheme {
    ResampleKind kind = ResampleKind::NOutOfNWithReplacement;
    int m = 0; // only for without-replacement draws; must satisfy m <= n

    static ResampleScheme n_out_of_n() { return {ResampleKind::NOutOfNWithReplacement, 0}; }
    static ResampleScheme m_out_of_n(int m) { return {ResampleKind::MOutOfNWithoutReplacement, m}; }
};

enum class IntervalMethod { MOutOfN, NormalDK, Percentile, BCa };

const char* interval_method_name(IntervalMethod method) noexcept;

struct IntervalEstimate {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0; // nominal confidence
    IntervalMethod method = IntervalMethod::MOutOfN;
    double point = 0.0; // plug-in estimate on the full sample
    int replicates = 0;
    int m = 0;                  // resample size actually used
    bool degenerate = false;    // all replicates equal: zero-width spread
    bool bca_fallback = false;  // BCa degenerated; percentile levels used
};

// Statistic evaluated on a resample; the seed feeds its tie-break draws.
using Statistic = std::function<double(const PairedSample&, Seed)>;

Statistic estimator_statistic(Estimator which);

// R replicate statistics. Without-replacement draws are uniform over
// m-subsets (order randomized); with-replacement draws are i.i.d. uniform
// indices. Each replicate runs on an independent substream derived from
// (seed, replicate index), so the vector is identical for any thread count.
std::vector<double> bootstrap_distribution(const PairedSample& sample, const Statistic& statistic,
                                           ResampleScheme scheme, int R, Seed seed,
                                           unsigned threads = 1);

// Default resample sizes, rounded to nearest and clamped to [2, n-1].
int default_m_subsample(int n); // round(2 sqrt(n)), for the m-out-of-n interval
int default_m_variance(int n);  // round(sqrt(n)), for the normal interval

// Scaling factor tau_k = sqrt(k) used by the m-out-of-n interval.
double scaling_factor(int k);

// Interval builders on explicit replicate vectors; the ci_* functions below
// are bootstrap + builder. Exposed so the quantile algebra can be checked
// against hand-built replicate sets.
IntervalEstimate interval_m_out_of_n_from(double point, std::vector<double> replicates,
                                          double conf, int n, int m);
IntervalEstimate interval_normal_from(double point, std::span<const double> replicates,
                                      double conf, int n, int m);
IntervalEstimate interval_percentile_from(double point, std::vector<double> replicates,
                                          double conf);
IntervalEstimate interval_bca_from(double point, std::vector<double> replicates,
                                   std::span<const double> jackknife, double conf);

// Non-parametric interval from the scaled without-replacement bootstrap:
// [xi - q(1-a/2)/tau_n, xi - q(a/2)/tau_n] with quantiles q of
// tau_m (xi*_m - xi). Default m = round(2 sqrt(n)).
IntervalEstimate ci_m_out_of_n(const PairedSample& sample, double conf, int R,
                               std::optional<int> m, Seed seed,
                               Estimator estimator = Estimator::Normalized,
                               unsigned threads = 1);

// Normal approximation xi +- z_{1-a/2} sigma_hat with the variance estimated
// from a without-replacement bootstrap at m = round(sqrt(n)), rescaled by
// sigma_hat = sd(xi*_m) sqrt(m/n).
IntervalEstimate ci_normal_dk(const PairedSample& sample, double conf, int R, Seed seed,
                              Estimator estimator = Estimator::Normalized,
                              unsigned threads = 1);

enum class NOutOfNVariant { Percentile, BCa };

// Classical with-replacement bootstrap. Unreliable for continuous Y; kept for
// the failure-mode studies. BCa falls back to percentile levels (flagged)
// when the bias correction or jackknife acceleration degenerates.
IntervalEstimate ci_n_out_of_n(const PairedSample& sample, double conf, int R,
                               NOutOfNVariant variant, Seed seed,
                               Estimator estimator = Estimator::Normalized,
                               unsigned threads = 1);

enum class CdfDistance { Kolmogorov, L2 };

// Data-driven subsample size: minimizes the ECDF distance between the scaled
// bootstrap distributions at m and m/2 over m in [6, n/2] by golden-section
// search on a continuous relaxation (rounded at evaluation, memoized,
// bracket tolerance < 2, ties resolved to the smallest m). Experimental: its
// intervals measured noticeably below nominal coverage.
int select_m_goetze(const PairedSample& sample, int R, CdfDistance distance, Seed seed,
                    const Statistic& statistic);
int select_m_goetze(const PairedSample& sample, int R, CdfDistance distance, Seed seed,
                    Estimator estimator = Estimator::Normalized);

// Order-statistic quantile with linear interpolation: h = (R-1)p + 1,
// v_(floor h) + (h - floor h)(v_(floor h + 1) - v_(floor h)).
double quantile_sorted(std::span<const double> sorted_values, double p);
double empirical_quantile(std::vector<double> values, double p);

// Sup distance between the empirical CDFs of two samples.
double kolmogorov_distance(std::vector<double> a, std::vector<double> b);
// Lebesgue integral of the squared ECDF difference over the merged support.
double l2_ecdf_distance(std::vector<double> a, std::vector<double> b);

} // namespace xicor
