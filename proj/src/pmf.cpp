#include "xicor/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xicor {

Pmf::Pmf(std::vector<double> values, std::vector<double> probs) {
    if (values.size() != probs.size() || values.empty())
        throw precondition_error("pmf: values and probs must be non-empty and of equal length");

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    double total = 0.0;
    for (std::size_t idx : order) {
        const double v = values[idx];
        const double p = probs[idx];
        if (!std::isfinite(v)) throw precondition_error("pmf: non-finite support value");
        if (!(p >= 0.0)) throw precondition_error("pmf: negative probability");
        if (p == 0.0) continue;
        total += p;
        if (!values_.empty() && v - values_.back() <= merge_tol) {
            probs_.back() += p;
        } else {
            values_.push_back(v);
            probs_.push_back(p);
        }
    }
    if (values_.empty())
        throw precondition_error("pmf: no atoms with positive probability");
    if (std::fabs(total - 1.0) > 1e-12)
        throw precondition_error("pmf: probabilities sum to " + std::to_string(total) +
                                 ", expected 1 within 1e-12");
}

Pmf Pmf::point_mass(double value) {
    return Pmf({value}, {1.0});
}

double Pmf::mean() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) m += probs_[i] * values_[i];
    return m;
}

double Pmf::variance() const noexcept {
    const double m = mean();
    double v = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double d = values_[i] - m;
        v += probs_[i] * d * d;
    }
    return v;
}

Pmf Pmf::shifted(double c) const {
    std::vector<double> vals(values_);
    for (double& v : vals) v += c;
    return Pmf(std::move(vals), probs_);
}

Pmf discrete_convolution(const Pmf& a, const Pmf& b) {
    std::vector<double> vals;
    std::vector<double> probs;
    vals.reserve(a.size() * b.size());
    probs.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            vals.push_back(a.values()[i] + b.values()[j]);
            probs.push_back(a.probs()[i] * b.probs()[j]);
        }
    return Pmf(std::move(vals), std::move(probs));
}

} // namespace xicor
