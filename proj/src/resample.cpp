#include "xicor/resample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "xicor/normal.hpp"
#include "xicor/parallel.hpp"

namespace xicor {

const char* interval_method_name(IntervalMethod method) noexcept {
    switch (method) {
        case IntervalMethod::MOutOfN: return "m-out-of-n";
        case IntervalMethod::NormalDK: return "normal";
        case IntervalMethod::Percentile: return "percentile";
        case IntervalMethod::BCa: return "bca";
    }
    return "unknown";
}

Statistic estimator_statistic(Estimator which) {
    return [which](const PairedSample& s, Seed seed) { return estimate(which, s, seed); };
}

double quantile_sorted(std::span<const double> sorted_values, double p) {
    if (sorted_values.empty())
        throw precondition_error("quantile: empty vector");
    if (!(p >= 0.0 && p <= 1.0))
        throw precondition_error("quantile: p must lie in [0,1]");
    const double h = static_cast<double>(sorted_values.size() - 1) * p;
    const auto i = static_cast<std::size_t>(h);
    if (i + 1 >= sorted_values.size()) return sorted_values.back();
    const double frac = h - static_cast<double>(i);
    return sorted_values[i] + frac * (sorted_values[i + 1] - sorted_values[i]);
}

double empirical_quantile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, p);
}

std::vector<double> bootstrap_distribution(const PairedSample& sample, const Statistic& statistic,
                                           ResampleScheme scheme, int R, Seed seed,
                                           unsigned threads) {
    if (sample.xs.size() != sample.ys.size())
        throw precondition_error("bootstrap: xs and ys have different lengths");
    const int n = static_cast<int>(sample.size());
    if (n < 1) throw precondition_error("bootstrap: empty sample");
    if (R < 2) throw precondition_error("bootstrap: need R >= 2 replicates");

    int m = n;
    if (scheme.kind == ResampleKind::MOutOfNWithoutReplacement) {
        m = scheme.m;
        if (m < 1) throw precondition_error("bootstrap: need m >= 1");
        if (m > n) throw precondition_error("bootstrap: m exceeds the sample size");
    }

    std::vector<double> replicates(R);
    parallel_for(static_cast<std::size_t>(R), threads, [&](std::size_t k) {
        const Seed rep = seed.with(seed_tag::replicate).with(k);
        Rng draw(rep.with(seed_tag::draw));

        thread_local std::vector<std::size_t> pool;
        thread_local PairedSample sub;
        const int size = scheme.kind == ResampleKind::MOutOfNWithoutReplacement ? m : n;
        sub.xs.resize(size);
        sub.ys.resize(size);

        if (scheme.kind == ResampleKind::MOutOfNWithoutReplacement) {
            pool.resize(n);
            std::iota(pool.begin(), pool.end(), std::size_t{0});
            // Partial Fisher-Yates: the prefix is a uniform ordered m-subset.
            for (int i = 0; i < m; ++i) {
                const auto j = i + static_cast<std::size_t>(draw.below(n - i));
                std::swap(pool[i], pool[j]);
                sub.xs[i] = sample.xs[pool[i]];
                sub.ys[i] = sample.ys[pool[i]];
            }
        } else {
            for (int i = 0; i < n; ++i) {
                const auto j = static_cast<std::size_t>(draw.below(n));
                sub.xs[i] = sample.xs[j];
                sub.ys[i] = sample.ys[j];
            }
        }
        replicates[k] = statistic(sub, rep.with(seed_tag::statistic));
    });
    return replicates;
}

int default_m_subsample(int n) {
    const auto m = static_cast<int>(std::llround(2.0 * std::sqrt(static_cast<double>(n))));
    return std::clamp(m, 2, n - 1);
}

int default_m_variance(int n) {
    const auto m = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
    return std::clamp(m, 2, n - 1);
}

double scaling_factor(int k) {
    return std::sqrt(static_cast<double>(k));
}

namespace {

void check_conf(double conf) {
    if (!(conf > 0.0 && conf < 1.0))
        throw precondition_error("confidence level must lie in (0,1)");
}

bool all_equal(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

} // namespace

IntervalEstimate interval_m_out_of_n_from(double point, std::vector<double> replicates,
                                          double conf, int n, int m) {
    check_conf(conf);
    if (replicates.size() < 2) throw precondition_error("interval: need at least 2 replicates");

    const double tau_m = scaling_factor(m);
    const double tau_n = scaling_factor(n);
    std::vector<double> deltas(replicates.size());
    for (std::size_t i = 0; i < replicates.size(); ++i)
        deltas[i] = tau_m * (replicates[i] - point);
    std::sort(deltas.begin(), deltas.end());

    const double alpha = 1.0 - conf;
    const double q_lo = quantile_sorted(deltas, alpha / 2.0);
    const double q_hi = quantile_sorted(deltas, 1.0 - alpha / 2.0);

    IntervalEstimate iv;
    iv.lower = point - q_hi / tau_n;
    iv.upper = point - q_lo / tau_n;
    iv.level = conf;
    iv.method = IntervalMethod::MOutOfN;
    iv.point = point;
    iv.replicates = static_cast<int>(replicates.size());
    iv.m = m;
    iv.degenerate = all_equal(deltas);
    return iv;
}

IntervalEstimate interval_normal_from(double point, std::span<const double> replicates,
                                      double conf, int n, int m) {
    check_conf(conf);
    const std::size_t r = replicates.size();
    if (r < 2) throw precondition_error("interval: need at least 2 replicates");

    double sd = 0.0;
    if (!all_equal(replicates)) {
        double mean = 0.0;
        for (double v : replicates) mean += v;
        mean /= static_cast<double>(r);
        double ssq = 0.0;
        for (double v : replicates) ssq += (v - mean) * (v - mean);
        sd = std::sqrt(ssq / static_cast<double>(r - 1));
    }
    // tau_n^2 Var(xi_n) -> V implies Var(xi_n) ~ (m/n) Var(xi*_m).
    const double sigma_hat = sd * std::sqrt(static_cast<double>(m) / static_cast<double>(n));
    const double z = normal_quantile(0.5 * (1.0 + conf));

    IntervalEstimate iv;
    iv.lower = point - z * sigma_hat;
    iv.upper = point + z * sigma_hat;
    iv.level = conf;
    iv.method = IntervalMethod::NormalDK;
    iv.point = point;
    iv.replicates = static_cast<int>(r);
    iv.m = m;
    iv.degenerate = sigma_hat == 0.0;
    return iv;
}

IntervalEstimate interval_percentile_from(double point, std::vector<double> replicates,
                                          double conf) {
    check_conf(conf);
    if (replicates.size() < 2) throw precondition_error("interval: need at least 2 replicates");
    std::sort(replicates.begin(), replicates.end());
    const double alpha = 1.0 - conf;

    IntervalEstimate iv;
    iv.lower = quantile_sorted(replicates, alpha / 2.0);
    iv.upper = quantile_sorted(replicates, 1.0 - alpha / 2.0);
    iv.level = conf;
    iv.method = IntervalMethod::Percentile;
    iv.point = point;
    iv.replicates = static_cast<int>(replicates.size());
    iv.degenerate = all_equal(replicates);
    return iv;
}

IntervalEstimate interval_bca_from(double point, std::vector<double> replicates,
                                   std::span<const double> jackknife, double conf) {
    check_conf(conf);
    if (replicates.size() < 2) throw precondition_error("interval: need at least 2 replicates");

    const auto R = static_cast<double>(replicates.size());
    const auto below = static_cast<double>(
        std::count_if(replicates.begin(), replicates.end(), [&](double v) { return v < point; }));

    auto percentile_fallback = [&](bool flagged) {
        IntervalEstimate iv = interval_percentile_from(point, replicates, conf);
        iv.method = IntervalMethod::BCa;
        iv.bca_fallback = flagged;
        return iv;
    };

    if (below == 0.0 || below == R) return percentile_fallback(true);
    const double z0 = normal_quantile(below / R);

    if (jackknife.size() < 2) throw precondition_error("interval: need at least 2 jackknife values");
    if (all_equal(jackknife)) return percentile_fallback(true);
    double jack_mean = 0.0;
    for (double v : jackknife) jack_mean += v;
    jack_mean /= static_cast<double>(jackknife.size());
    double s2 = 0.0, s3 = 0.0;
    for (double v : jackknife) {
        const double d = jack_mean - v;
        s2 += d * d;
        s3 += d * d * d;
    }
    if (s2 == 0.0) return percentile_fallback(true);
    const double accel = s3 / (6.0 * std::pow(s2, 1.5));

    const double alpha = 1.0 - conf;
    auto adjusted = [&](double z_alpha) {
        const double zsum = z0 + z_alpha;
        const double denom = 1.0 - accel * zsum;
        return normal_cdf(z0 + zsum / denom);
    };
    const double a1 = adjusted(normal_quantile(alpha / 2.0));
    const double a2 = adjusted(normal_quantile(1.0 - alpha / 2.0));
    if (!std::isfinite(a1) || !std::isfinite(a2) || !(a1 < a2)) return percentile_fallback(true);

    std::sort(replicates.begin(), replicates.end());
    IntervalEstimate iv;
    iv.lower = quantile_sorted(replicates, a1);
    iv.upper = quantile_sorted(replicates, a2);
    iv.level = conf;
    iv.method = IntervalMethod::BCa;
    iv.point = point;
    iv.replicates = static_cast<int>(replicates.size());
    iv.degenerate = all_equal(replicates);
    return iv;
}

namespace {

void check_ci_inputs(const PairedSample& sample, double conf, int R) {
    sample.validate();
    check_conf(conf);
    if (R < 2) throw precondition_error("bootstrap: need R >= 2 replicates");
    if (sample.size() < 9)
        throw precondition_error("confidence interval: need n >= 9");
}

} // namespace

IntervalEstimate ci_m_out_of_n(const PairedSample& sample, double conf, int R,
                               std::optional<int> m, Seed seed, Estimator estimator,
                               unsigned threads) {
    check_ci_inputs(sample, conf, R);
    const int n = static_cast<int>(sample.size());

    int m_used;
    if (m.has_value()) {
        m_used = *m;
        if (m_used >= n)
            throw precondition_error("m-out-of-n interval: m must be below n");
        if (m_used < 2) throw precondition_error("m-out-of-n interval: need m >= 2");
    } else {
        m_used = default_m_subsample(n);
    }

    const double point = estimate(estimator, sample, seed.with(seed_tag::point));
    auto replicates = bootstrap_distribution(sample, estimator_statistic(estimator),
                                             ResampleScheme::m_out_of_n(m_used), R, seed, threads);
    return interval_m_out_of_n_from(point, std::move(replicates), conf, n, m_used);
}

IntervalEstimate ci_normal_dk(const PairedSample& sample, double conf, int R, Seed seed,
                              Estimator estimator, unsigned threads) {
    check_ci_inputs(sample, conf, R);
    const int n = static_cast<int>(sample.size());
    const int m_used = default_m_variance(n);

    const double point = estimate(estimator, sample, seed.with(seed_tag::point));
    auto replicates = bootstrap_distribution(sample, estimator_statistic(estimator),
                                             ResampleScheme::m_out_of_n(m_used), R, seed, threads);
    return interval_normal_from(point, replicates, conf, n, m_used);
}

IntervalEstimate ci_n_out_of_n(const PairedSample& sample, double conf, int R,
                               NOutOfNVariant variant, Seed seed, Estimator estimator,
                               unsigned threads) {
    check_ci_inputs(sample, conf, R);
    const int n = static_cast<int>(sample.size());

    const double point = estimate(estimator, sample, seed.with(seed_tag::point));
    auto replicates = bootstrap_distribution(sample, estimator_statistic(estimator),
                                             ResampleScheme::n_out_of_n(), R, seed, threads);

    if (variant == NOutOfNVariant::Percentile) {
        auto iv = interval_percentile_from(point, std::move(replicates), conf);
        iv.m = n;
        return iv;
    }

    // Jackknife leave-one-out values for the acceleration. A deletion can make
    // the remaining ys constant; such samples degenerate to percentile levels.
    std::vector<double> jackknife(n);
    PairedSample loo;
    loo.xs.resize(n - 1);
    loo.ys.resize(n - 1);
    try {
        for (int i = 0; i < n; ++i) {
            for (int j = 0, k = 0; j < n; ++j) {
                if (j == i) continue;
                loo.xs[k] = sample.xs[j];
                loo.ys[k] = sample.ys[j];
                ++k;
            }
            jackknife[i] = estimate(estimator, loo, seed.with(seed_tag::jackknife).with(i));
        }
    } catch (const precondition_error&) {
        auto iv = interval_percentile_from(point, std::move(replicates), conf);
        iv.method = IntervalMethod::BCa;
        iv.bca_fallback = true;
        iv.m = n;
        return iv;
    }
    auto iv = interval_bca_from(point, std::move(replicates), jackknife, conf);
    iv.m = n;
    return iv;
}

double kolmogorov_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw precondition_error("ecdf distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double dist = 0.0;
    while (i < a.size() || j < b.size()) {
        double v;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j])) v = a[i];
        else v = b[j];
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        dist = std::max(dist, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return dist;
}

double l2_ecdf_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw precondition_error("ecdf distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double acc = 0.0;
    double prev = 0.0;
    bool have_prev = false;
    while (i < a.size() || j < b.size()) {
        double v;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j])) v = a[i];
        else v = b[j];
        if (have_prev && v > prev) {
            const double diff = static_cast<double>(i) / na - static_cast<double>(j) / nb;
            acc += diff * diff * (v - prev);
        }
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        prev = v;
        have_prev = true;
    }
    return acc;
}

int select_m_goetze(const PairedSample& sample, int R, CdfDistance distance, Seed seed,
                    const Statistic& statistic) {
    sample.validate();
    if (R < 2) throw precondition_error("bootstrap: need R >= 2 replicates");
    const int n = static_cast<int>(sample.size());
    const int lo = 6;
    const int hi = n / 2;
    if (hi < lo)
        throw precondition_error("select m: search interval [6, n/2] is empty");

    const double point = statistic(sample, seed.with(seed_tag::point));

    auto measure = [&](std::vector<double> x, std::vector<double> y) {
        return distance == CdfDistance::Kolmogorov ? kolmogorov_distance(std::move(x), std::move(y))
                                                   : l2_ecdf_distance(std::move(x), std::move(y));
    };

    std::map<int, double> evaluated;
    auto objective = [&](double m_continuous) {
        const int m = std::clamp(static_cast<int>(std::llround(m_continuous)), lo, hi);
        if (auto it = evaluated.find(m); it != evaluated.end()) return it->second;
        const int m_half = std::max(2, static_cast<int>(std::llround(m / 2.0)));

        auto scaled = [&](int size, std::uint64_t tag) {
            auto reps = bootstrap_distribution(sample, statistic, ResampleScheme::m_out_of_n(size),
                                               R, seed.with(seed_tag::select_m).with(m).with(tag));
            const double tau = scaling_factor(size);
            for (double& v : reps) v = tau * (v - point);
            return reps;
        };
        const double d = measure(scaled(m, 0), scaled(m_half, 1));
        evaluated.emplace(m, d);
        return d;
    };

    objective(lo);
    objective(hi);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a >= 2.0) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = objective(d);
        }
    }

    // Smallest m attaining the minimum among everything evaluated.
    int best_m = lo;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [m, value] : evaluated) {
        if (value < best) {
            best = value;
            best_m = m;
        }
    }
    return best_m;
}

int select_m_goetze(const PairedSample& sample, int R, CdfDistance distance, Seed seed,
                    Estimator estimator) {
    return select_m_goetze(sample, R, distance, seed, estimator_statistic(estimator));
}

} // namespace xicor
