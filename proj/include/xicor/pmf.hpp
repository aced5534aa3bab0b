#pragma once

#include <vector>

#include "xicor/common.hpp"

namespace xicor {

// Finite probability mass function with ascending, de-duplicated support.
class Pmf {
public:
    // Atoms closer than merge_tol are coalesced onto the first (smallest)
    // value. Total mass must be 1 within 1e-12; zero-probability atoms are
    // dropped, negative ones rejected.
    static constexpr double merge_tol = 1e-12;

    Pmf() = default;
    Pmf(std::vector<double> values, std::vector<double> probs);

    static Pmf point_mass(double value);

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return values_.size(); }

    double mean() const noexcept;
    double variance() const noexcept;

    // Pmf of X + c.
    Pmf shifted(double c) const;

private:
    std::vector<double> values_;
    std::vector<double> probs_;
};

// Pmf of the sum of two independent variables; direct product-space sum,
// exact for the small supports used here.
Pmf discrete_convolution(const Pmf& a, const Pmf& b);

} // namespace xicor
