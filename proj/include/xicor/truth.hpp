#pragma once

#include <functional>
#include <vector>

#include "xicor/models.hpp"
#include "xicor/pmf.hpp"
#include "xicor/quadrature.hpp"

namespace xicor {

// Continuous-Y conditional law: everything needed to evaluate the asymptotic
// xi numerically. The t-integration range [y_lo, y_hi] already includes the
// tail truncation.
struct ContinuousLaw {
    std::function<double(double, double)> p_y_ge_t;       // (t, x) -> P(Y >= t | X = x)
    std::function<double(double)> x_density;              // dlambda/dx
    double x_lo = 0.0, x_hi = 0.0;
    std::function<double(double, double)> y_density_at_x; // (y, x) -> density of Y given X = x
    double y_lo = 0.0, y_hi = 0.0;
};

// 6 * Int Int P(Y>=t|X=x)^2 dlambda(x) dmu(t) - 2, with dmu(t) = f_Y(t) dt and
// f_Y from the inner convolution integral. Sub-integrals run one and two
// orders tighter than spec so the outer rule dominates the error budget.
double xi_continuous_numeric(const ContinuousLaw& law, const QuadratureSpec& spec = {});

// Model-1 path: the inner x-integral and the Y density in closed form, only
// the outer t-integral numeric.
double xi_model1_symbolic(double a, double b, double sigma, const QuadratureSpec& spec = {});

// Model 4: xi = (1-p) p' / (1 - p p').
double xi_model4_closed(double p, double p_prime);

// Finite law given as the X pmf plus the conditional pmf of Y at each X atom.
struct DiscreteLaw {
    Pmf x;
    std::vector<Pmf> y_at_x; // same length as the X support
};

// Exact evaluation of the conditional-probability form of xi on a finite law.
double xi_discrete_conditional(const DiscreteLaw& law);

// Additive-noise convenience: Y = f(X) + eps with Y's pmf built by
// discrete_convolution over the induced supports.
double xi_discrete(const Pmf& x_pmf, const Pmf& noise_pmf, const std::function<double(double)>& f);

// Law builders for the simulated models; also used directly by tests.
// truncation = number of noise standard deviations kept beyond the range of f.
ContinuousLaw continuous_law(const ModelSpec& spec, double truncation = 10.0); // ids 1-3, 8
DiscreteLaw discrete_law(const ModelSpec& spec);                               // ids 4-7, 9, 10

// Asymptotic xi for any of the ten models. Models 1-3 go through the numeric
// integration (model 1 cross-checked against the symbolic path to 1e-6),
// model 4 through the closed form, models 5-7 through the discrete sums, and
// models 8-10 are exactly 0.
double xi_true(const ModelSpec& spec, const QuadratureSpec& qspec = {});

} // namespace xicor
