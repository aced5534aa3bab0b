#include "xicor/truth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "xicor/normal.hpp"

namespace xicor {

namespace {

QuadratureSpec tighten(const QuadratureSpec& spec, double factor) {
    QuadratureSpec out = spec;
    out.abs_tol *= factor;
    out.rel_tol *= factor;
    return out;
}

} // namespace

double xi_continuous_numeric(const ContinuousLaw& law, const QuadratureSpec& spec) {
    spec.validate();
    if (!(law.x_lo < law.x_hi) || !(law.y_lo < law.y_hi))
        throw precondition_error("continuous law: empty integration range");

    const QuadratureSpec middle = tighten(spec, 1e-1); // P(Y>=t|x)^2 integral
    const QuadratureSpec inner = tighten(spec, 1e-2);  // density convolution

    auto marginal_density = [&](double t) {
        return integrate_adaptive(
            [&](double x) { return law.x_density(x) * law.y_density_at_x(t, x); }, law.x_lo,
            law.x_hi, inner);
    };
    auto mean_sq_conditional = [&](double t) {
        return integrate_adaptive(
            [&](double x) {
                const double p = law.p_y_ge_t(t, x);
                return p * p * law.x_density(x);
            },
            law.x_lo, law.x_hi, middle);
    };

    const double integral = integrate_adaptive(
        [&](double t) { return marginal_density(t) * mean_sq_conditional(t); }, law.y_lo, law.y_hi,
        spec);
    return 6.0 * integral - 2.0;
}

namespace {

// Antiderivative of Phi(z)^2: z Phi(z)^2 + 2 Phi(z) phi(z) - Phi(z sqrt(2)) / sqrt(pi).
double phi_sq_antiderivative(double z) {
    const double cdf = normal_cdf(z);
    return z * cdf * cdf + 2.0 * cdf * normal_pdf(z) -
           normal_cdf(z * std::numbers::sqrt2) / std::sqrt(std::numbers::pi);
}

} // namespace

double xi_model1_symbolic(double a, double b, double sigma, const QuadratureSpec& spec) {
    spec.validate();
    if (!(a < b)) throw precondition_error("model 1: need a < b");
    if (!(sigma > 0.0)) throw precondition_error("model 1: need sigma > 0");

    const double width = b - a;
    auto inner = [&](double t) {
        return sigma / width *
               (phi_sq_antiderivative((b - t) / sigma) - phi_sq_antiderivative((a - t) / sigma));
    };
    auto y_density = [&](double t) {
        return (normal_cdf((t - a) / sigma) - normal_cdf((t - b) / sigma)) / width;
    };

    const double lo = a - spec.truncation * sigma;
    const double hi = b + spec.truncation * sigma;
    const double integral =
        integrate_adaptive([&](double t) { return y_density(t) * inner(t); }, lo, hi, spec);
    return 6.0 * integral - 2.0;
}

double xi_model4_closed(double p, double p_prime) {
    if (!(p >= 0.0 && p < 1.0))
        throw precondition_error("model 4: need p in [0,1)");
    if (!(p_prime > 0.0 && p_prime <= 1.0))
        throw precondition_error("model 4: need p' in (0,1]");
    const double pp = p * p_prime;
    if (pp >= 1.0) throw precondition_error("model 4: p p' must be below 1");
    return (1.0 - p) * p_prime / (1.0 - pp);
}

double xi_discrete_conditional(const DiscreteLaw& law) {
    const std::size_t nx = law.x.size();
    if (law.y_at_x.size() != nx)
        throw precondition_error("discrete law: one conditional pmf per X atom required");

    // Canonical Y support: merge every conditional atom with the pmf tolerance.
    std::vector<double> atoms;
    for (const auto& cond : law.y_at_x)
        atoms.insert(atoms.end(), cond.values().begin(), cond.values().end());
    std::sort(atoms.begin(), atoms.end());
    std::vector<double> support;
    for (double v : atoms)
        if (support.empty() || v - support.back() > Pmf::merge_tol) support.push_back(v);
    const std::size_t nt = support.size();

    auto canonical_index = [&](double v) {
        auto it = std::lower_bound(support.begin(), support.end(), v);
        std::size_t idx = static_cast<std::size_t>(it - support.begin());
        if (idx == nt || (idx > 0 && v - support[idx - 1] <= support[idx] - v)) --idx;
        return idx;
    };

    // Conditional tail probabilities P(Y >= t_k | x_i) on the canonical grid.
    std::vector<std::vector<double>> tails(nx, std::vector<double>(nt, 0.0));
    std::vector<double> marginal(nt, 0.0); // mu on the canonical grid
    for (std::size_t i = 0; i < nx; ++i) {
        const auto& cond = law.y_at_x[i];
        auto& tail = tails[i];
        for (std::size_t j = 0; j < cond.size(); ++j) {
            const std::size_t k = canonical_index(cond.values()[j]);
            tail[k] += cond.probs()[j];
            marginal[k] += law.x.probs()[i] * cond.probs()[j];
        }
        for (std::size_t k = nt - 1; k-- > 0;) tail[k] += tail[k + 1];
    }

    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
        double mean_tail = 0.0;
        double mean_tail_sq = 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            const double t = tails[i][k];
            mean_tail += law.x.probs()[i] * t;
            mean_tail_sq += law.x.probs()[i] * t * t;
        }
        numerator += marginal[k] * (mean_tail_sq - mean_tail * mean_tail);
        denominator += marginal[k] * mean_tail * (1.0 - mean_tail);
    }
    if (denominator == 0.0)
        throw precondition_error("discrete law: Y is constant (zero denominator)");
    return numerator / denominator;
}

double xi_discrete(const Pmf& x_pmf, const Pmf& noise_pmf, const std::function<double(double)>& f) {
    // Y's pmf via the convolution keeps the spec'd construction on the additive
    // path; the conditional evaluator then reuses its canonical support.
    std::vector<double> fx(x_pmf.size());
    for (std::size_t i = 0; i < x_pmf.size(); ++i) fx[i] = f(x_pmf.values()[i]);
    const Pmf fx_pmf(fx, x_pmf.probs());
    (void)discrete_convolution(fx_pmf, noise_pmf); // validates the combined support

    DiscreteLaw law;
    law.x = x_pmf;
    law.y_at_x.reserve(x_pmf.size());
    for (std::size_t i = 0; i < x_pmf.size(); ++i)
        law.y_at_x.push_back(noise_pmf.shifted(fx[i]));
    return xi_discrete_conditional(law);
}

ContinuousLaw continuous_law(const ModelSpec& spec, double truncation) {
    spec.validate();
    if (!(truncation >= 8.0))
        throw precondition_error("continuous law: truncation must be at least 8");
    ContinuousLaw law;
    law.x_lo = spec.a;
    law.x_hi = spec.b;
    const double width = spec.b - spec.a;
    law.x_density = [width](double) { return 1.0 / width; };

    if (spec.id == 8) {
        // Independent X and Y, both uniform on [a,b].
        const double a = spec.a, b = spec.b;
        law.p_y_ge_t = [b, width](double t, double) {
            return std::clamp((b - t) / width, 0.0, 1.0);
        };
        law.y_density_at_x = [a, b, width](double y, double) {
            return (y >= a && y <= b) ? 1.0 / width : 0.0;
        };
        law.y_lo = a;
        law.y_hi = b;
        return law;
    }
    if (spec.id < 1 || spec.id > 3)
        throw precondition_error("continuous law: only models 1-3 and 8");
    if (!(spec.sigma > 0.0))
        throw precondition_error("continuous law: need sigma > 0");

    const int id = spec.id;
    const double sigma = spec.sigma;
    law.p_y_ge_t = [id, sigma](double t, double x) {
        return normal_cdf((model_regression(id, x) - t) / sigma);
    };
    law.y_density_at_x = [id, sigma](double y, double x) {
        return normal_pdf((y - model_regression(id, x)) / sigma) / sigma;
    };

    // Reachable range of f on [a,b] for the t-truncation.
    double f_lo = 0.0, f_hi = 0.0;
    switch (id) {
        case 1:
            f_lo = spec.a;
            f_hi = spec.b;
            break;
        case 2:
            f_lo = (spec.a <= 0.0 && spec.b >= 0.0) ? 0.0
                                                    : std::min(spec.a * spec.a, spec.b * spec.b);
            f_hi = std::max(spec.a * spec.a, spec.b * spec.b);
            break;
        case 3: {
            f_lo = 1.0;
            f_hi = -1.0;
            // sin(2 pi x) sweeps a full period per unit; scan a fine grid plus endpoints.
            const int steps = 512;
            for (int i = 0; i <= steps; ++i) {
                const double x = spec.a + width * i / steps;
                const double v = model_regression(3, x);
                f_lo = std::min(f_lo, v);
                f_hi = std::max(f_hi, v);
            }
            if (width >= 1.0) {
                f_lo = -1.0;
                f_hi = 1.0;
            }
            break;
        }
        default:
            break;
    }
    law.y_lo = f_lo - truncation * sigma;
    law.y_hi = f_hi + truncation * sigma;
    return law;
}

DiscreteLaw discrete_law(const ModelSpec& spec) {
    spec.validate();
    DiscreteLaw law;
    switch (spec.id) {
        case 4: {
            law.x = Pmf({0.0, 1.0}, {1.0 - spec.p, spec.p});
            law.y_at_x.push_back(Pmf::point_mass(0.0));
            law.y_at_x.push_back(Pmf({0.0, 1.0}, {1.0 - spec.p_prime, spec.p_prime}));
            return law;
        }
        case 5:
        case 6:
        case 7: {
            law.x = pmf_of(Distribution::equal(spec.m, spec.a, spec.b));
            const Pmf noise = spec.sigma == 0.0
                                  ? Pmf::point_mass(0.0)
                                  : pmf_of(Distribution::scaled_coin_noise(spec.m_prime, spec.sigma));
            for (double x : law.x.values())
                law.y_at_x.push_back(noise.shifted(model_regression(spec.id, x)));
            return law;
        }
        case 9: {
            law.x = pmf_of(Distribution::equal(spec.m, spec.a, spec.b));
            const Pmf y = pmf_of(Distribution::equal(spec.m_prime, spec.a, spec.b));
            law.y_at_x.assign(law.x.size(), y);
            return law;
        }
        case 10: {
            law.x = pmf_of(Distribution::binom(spec.m, spec.p));
            const Pmf y = pmf_of(Distribution::binom(spec.m_prime, spec.p_prime));
            law.y_at_x.assign(law.x.size(), y);
            return law;
        }
        default:
            throw precondition_error("discrete law: only models 4-7, 9, 10");
    }
}

double xi_true(const ModelSpec& spec, const QuadratureSpec& qspec) {
    spec.validate();
    qspec.validate();
    switch (spec.id) {
        case 1: {
            if (spec.sigma == 0.0) return 1.0; // Y = f(X) exactly
            const double symbolic = xi_model1_symbolic(spec.a, spec.b, spec.sigma, qspec);
            const double numeric =
                xi_continuous_numeric(continuous_law(spec, qspec.truncation), qspec);
            if (std::fabs(symbolic - numeric) > 1e-6)
                throw numeric_error("model 1: symbolic and numeric paths disagree by " +
                                    std::to_string(std::fabs(symbolic - numeric)));
            return symbolic;
        }
        case 2:
        case 3:
            if (spec.sigma == 0.0) return 1.0;
            return xi_continuous_numeric(continuous_law(spec, qspec.truncation), qspec);
        case 4:
            return xi_model4_closed(spec.p, spec.p_prime);
        case 5:
        case 6:
        case 7:
            return xi_discrete_conditional(discrete_law(spec));
        case 8:
        case 9:
        case 10:
            return 0.0;
        default:
            throw precondition_error("model: id must be 1..10");
    }
}

} // namespace xicor
