#include "xicor/rankcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace xicor {

namespace {

// n(n-1)^2 must stay below 2^63 for the exact integer rank sums.
constexpr std::size_t kMaxExactN = 2'000'000;

void check_finite(const std::vector<double>& v, const char* name) {
    for (double x : v)
        if (!std::isfinite(x))
            throw precondition_error(std::string("paired sample: non-finite value in ") + name);
}

} // namespace

void PairedSample::validate() const {
    if (xs.size() != ys.size())
        throw precondition_error("paired sample: xs and ys have different lengths (" +
                                 std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) + ")");
    if (xs.size() < 2)
        throw precondition_error("paired sample: need at least 2 observations");
    check_finite(xs, "xs");
    check_finite(ys, "ys");
    const double y0 = ys.front();
    if (std::all_of(ys.begin(), ys.end(), [y0](double y) { return y == y0; }))
        throw precondition_error("paired sample: Y is constant");
}

const char* estimator_name(Estimator which) noexcept {
    return which == Estimator::Raw ? "raw" : "normalized";
}

RankProfile sort_with_random_ties(const PairedSample& sample, Seed seed) {
    sample.validate();
    const std::size_t n = sample.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Stable sort first: the block contents then depend only on values, not on
    // the input order of non-tied elements.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sample.xs[a] < sample.xs[b];
    });

    Rng rng(seed.with(seed_tag::tie_break));
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && sample.xs[order[j]] == sample.xs[order[i]]) ++j;
        if (j - i > 1) rng.shuffle(std::span<std::size_t>(order.data() + i, j - i));
        i = j;
    }

    std::vector<double> sorted_y(sample.ys);
    std::sort(sorted_y.begin(), sorted_y.end());

    RankProfile profile;
    profile.order = std::move(order);
    profile.r.resize(n);
    profile.l.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double y = sample.ys[profile.order[k]];
        const auto below = std::lower_bound(sorted_y.begin(), sorted_y.end(), y) - sorted_y.begin();
        const auto not_above = std::upper_bound(sorted_y.begin(), sorted_y.end(), y) - sorted_y.begin();
        profile.r[k] = static_cast<std::int64_t>(not_above);
        profile.l[k] = static_cast<std::int64_t>(n - static_cast<std::size_t>(below));
    }
    return profile;
}

double xi_from_profile(const RankProfile& profile) {
    const std::size_t n = profile.r.size();
    if (n < 2 || profile.l.size() != n)
        throw precondition_error("rank profile: need matching r and l with n >= 2");
    if (n > kMaxExactN)
        throw precondition_error("rank profile: n exceeds the exact integer arithmetic limit");

    std::int64_t jump_sum = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        jump_sum += std::llabs(profile.r[i + 1] - profile.r[i]);

    std::int64_t denom = 0;
    const auto ni = static_cast<std::int64_t>(n);
    for (std::size_t i = 0; i < n; ++i)
        denom += profile.l[i] * (ni - profile.l[i]);
    if (denom == 0)
        throw precondition_error("rank profile: Y is constant");

    // Single division of exact integers: the result is the correctly rounded
    // value of the rational 1 - n*jump_sum / (2*denom).
    const std::int64_t d2 = 2 * denom;
    return static_cast<double>(d2 - ni * jump_sum) / static_cast<double>(d2);
}

double xi_n(const PairedSample& sample, Seed seed) {
    return xi_from_profile(sort_with_random_ties(sample, seed));
}

double xi_upper_bound(std::span<const double> ys) {
    const std::size_t n = ys.size();
    if (n < 2)
        throw precondition_error("xi upper bound: need at least 2 values");
    if (n > kMaxExactN)
        throw precondition_error("xi upper bound: n exceeds the exact integer arithmetic limit");
    for (double y : ys)
        if (!std::isfinite(y)) throw precondition_error("xi upper bound: non-finite value");

    std::vector<double> sorted_y(ys.begin(), ys.end());
    std::sort(sorted_y.begin(), sorted_y.end());
    if (sorted_y.front() == sorted_y.back())
        throw precondition_error("xi upper bound: Y is constant");

    const auto ni = static_cast<std::int64_t>(n);
    std::int64_t denom = 0;
    std::int64_t r_min = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && sorted_y[j] == sorted_y[i]) ++j;
        const auto count = static_cast<std::int64_t>(j - i);
        const auto l = static_cast<std::int64_t>(n - i); // #{y_j >= value} for this group
        denom += count * l * (ni - l);
        if (i == 0) r_min = count;
        i = j;
    }

    const std::int64_t d2 = 2 * denom;
    return static_cast<double>(d2 - ni * (ni - r_min)) / static_cast<double>(d2);
}

namespace {

double normalize(double raw, const PairedSample& sample) {
    const double bound = xi_upper_bound(sample.ys);
    if (bound == 0.0)
        throw precondition_error("xi normalized: upper bound is zero (n = 2); normalization undefined");
    return std::max(-1.0, raw / bound);
}

} // namespace

double xi_normalized(const PairedSample& sample, Seed seed) {
    return normalize(xi_n(sample, seed), sample);
}

XiPair xi_both(const PairedSample& sample, Seed seed) {
    const double raw = xi_n(sample, seed);
    return XiPair{raw, normalize(raw, sample)};
}

double estimate(Estimator which, const PairedSample& sample, Seed seed) {
    return which == Estimator::Raw ? xi_n(sample, seed) : xi_normalized(sample, seed);
}

double total_variation(std::span<const double> seq) {
    if (seq.empty())
        throw precondition_error("total variation: empty sequence");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        sum += std::fabs(seq[i + 1] - seq[i]);
    return sum;
}

} // namespace xicor
