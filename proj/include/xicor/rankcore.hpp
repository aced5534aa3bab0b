#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xicor/common.hpp"
#include "xicor/rng.hpp"

namespace xicor {

// n paired observations (x_i, y_i); the estimator's sole input.
struct PairedSample {
    std::vector<double> xs;
    std::vector<double> ys;

    std::size_t size() const noexcept { return xs.size(); }

    // Enforces: equal lengths, n >= 2, all values finite, ys not constant.
    void validate() const;
};

// Per-index ranks after ordering pairs by x with random tie-breaks.
// r[i] = #{j : y_j <= y_i}, l[i] = #{j : y_j >= y_i}, counted over the whole
// sample; order is the permutation that was applied.
struct RankProfile {
    std::vector<std::int64_t> r;
    std::vector<std::int64_t> l;
    std::vector<std::size_t> order;
};

enum class Estimator { Raw, Normalized };

const char* estimator_name(Estimator which) noexcept;

// Orders pairs so x is non-decreasing; each maximal block of equal x values is
// put in a uniformly random order drawn from the seed. Ties among the ys are
// never broken: the rank definitions absorb them.
RankProfile sort_with_random_ties(const PairedSample& sample, Seed seed);

// xi from an existing profile. Exact integer rank sums; one final division.
double xi_from_profile(const RankProfile& profile);

// Rank correlation of y on x.
double xi_n(const PairedSample& sample, Seed seed);

// Maximum of xi_n over all x-orderings of the given ys, i.e. xi_n(y,y).
// Equals (n-2)/(n+1) when all ys are distinct; strictly positive for n > 2.
double xi_upper_bound(std::span<const double> ys);

// xi_n divided by its upper bound, cut off below at -1. The same tie-break
// draws are used for the numerator as xi_n with that seed. Undefined at n = 2,
// where the upper bound is zero.
double xi_normalized(const PairedSample& sample, Seed seed);

struct XiPair {
    double raw;
    double normalized;
};

// Both estimators from a single tie-break draw (one shared rank profile).
XiPair xi_both(const PairedSample& sample, Seed seed);

double estimate(Estimator which, const PairedSample& sample, Seed seed);

// Sum of |seq[k+1] - seq[k]|. At least max - min, with equality iff the
// sequence is monotone.
double total_variation(std::span<const double> seq);

} // namespace xicor
