#include "xicor/normal.hpp"

#include <cmath>
#include <numbers>

#include "xicor/common.hpp"

namespace xicor {

double normal_pdf(double z) noexcept {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

namespace {

// Acklam's rational approximation of the probit function, |rel err| < 1.15e-9.
// Called with p in (0, 0.5]; the caller reflects the upper half.
double probit_approx(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    static constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double probit_lower_half(double p) {
    double x = probit_approx(p);
    // One Newton step against the CDF; skipped only where the density underflows.
    const double dens = normal_pdf(x);
    if (dens > 0.0 && std::isfinite(dens)) {
        const double step = (normal_cdf(x) - p) / dens;
        if (std::isfinite(step)) x -= step;
    }
    return x;
}

} // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw precondition_error("normal_quantile: p must lie in (0,1)");
    if (p == 0.5) return 0.0;
    // Reflect the upper half: 1-p is exact for p >= 0.5, and the symmetry
    // identity normal_quantile(p) == -normal_quantile(1-p) holds bitwise.
    if (p > 0.5) return -probit_lower_half(1.0 - p);
    return probit_lower_half(p);
}

} // namespace xicor
