#pragma once

#include <functional>

#include "xicor/common.hpp"

namespace xicor {

// Tolerances and tail truncation for the nested quadratures of the truth
// computations. Nested layers tighten these by one and two orders.
struct QuadratureSpec {
    double abs_tol = 1e-6;
    double rel_tol = 1e-6;
    // Number of noise standard deviations kept beyond the reachable range of
    // f(X) when truncating infinite tails; normal mass beyond 10 sd is ~1e-23.
    double truncation = 10.0;

    void validate() const;
};

// Adaptive Gauss-Kronrod (G7,K15) panel subdivision. A panel is accepted when
// its error estimate meets abs_tol or rel_tol, whichever is looser. Throws
// numeric_error on non-finite integrand values or exhausted subdivision depth.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& spec = {});

} // namespace xicor
