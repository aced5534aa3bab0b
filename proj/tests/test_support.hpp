#pragma once

// Shared helpers and independent oracles for the test suites. The oracles
// deliberately avoid the library's computation paths: the rank correlation is
// evaluated by direct O(n^2) counting, quantile inverses by bisection.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "xicor/normal.hpp"
#include "xicor/rankcore.hpp"
#include "xicor/rng.hpp"

namespace oracle {

// Rank correlation of pairs already ordered by x (distinct x assumed), by
// direct evaluation of the defining formula with quadratic-time counts.
inline double xi_ordered(const std::vector<double>& ys) {
    const auto n = static_cast<int>(ys.size());
    std::vector<long> r(n, 0), l(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (ys[j] <= ys[i]) ++r[i];
            if (ys[j] >= ys[i]) ++l[i];
        }
    long jump = 0;
    for (int i = 0; i + 1 < n; ++i) jump += std::labs(r[i + 1] - r[i]);
    long denom = 0;
    for (int i = 0; i < n; ++i) denom += l[i] * (n - l[i]);
    return 1.0 - static_cast<double>(n) * static_cast<double>(jump) /
                     (2.0 * static_cast<double>(denom));
}

// Inverse normal CDF by bisection against the CDF, to absolute 1e-12. The
// upper tail is resolved by reflection (the CDF quantizes near 1, the lower
// tail does not; 1-p is exact for p >= 0.5).
inline double normal_quantile_bisect(double p) {
    if (p > 0.5) return -normal_quantile_bisect(1.0 - p);
    double lo = -40.0, hi = 40.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (xicor::normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline bool is_monotone(const std::vector<double>& v) {
    const bool ascending = std::is_sorted(v.begin(), v.end());
    const bool descending = std::is_sorted(v.begin(), v.end(), std::greater<double>());
    return ascending || descending;
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Identity sample (x_i = i, y_i = values[i]); x distinct so tie-breaking is inert.
inline xicor::PairedSample ordered_sample(const std::vector<double>& ys) {
    xicor::PairedSample s;
    s.ys = ys;
    s.xs.resize(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) s.xs[i] = static_cast<double>(i);
    return s;
}

} // namespace oracle
