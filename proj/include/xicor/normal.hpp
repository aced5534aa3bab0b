#pragma once

namespace xicor {

// Standard normal density.
double normal_pdf(double z) noexcept;

// Standard normal CDF via the complementary error function; absolute error
// well below 1e-12 over the double range.
double normal_cdf(double z) noexcept;

// Inverse standard normal CDF on (0,1). Rational approximation refined by one
// Newton step against normal_cdf; absolute error below 1e-9.
double normal_quantile(double p);

} // namespace xicor
