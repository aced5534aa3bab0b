#include "xicor/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "xicor/normal.hpp"

namespace xicor {

Distribution Distribution::unif(double a, double b) {
    if (!(a < b)) throw precondition_error("unif: need a < b");
    Distribution d;
    d.kind = Kind::Unif;
    d.a = a;
    d.b = b;
    return d;
}

Distribution Distribution::norm(double mu, double sigma) {
    if (!(sigma > 0.0)) throw precondition_error("norm: need sigma > 0");
    Distribution d;
    d.kind = Kind::Norm;
    d.mu = mu;
    d.sigma = sigma;
    return d;
}

Distribution Distribution::equal(int m, double a, double b) {
    if (m < 2) throw precondition_error("equal: need at least 2 atoms");
    if (!(a < b)) throw precondition_error("equal: need a < b");
    Distribution d;
    d.kind = Kind::Equal;
    d.m = m;
    d.a = a;
    d.b = b;
    return d;
}

Distribution Distribution::binom(int n, double p) {
    if (n < 1) throw precondition_error("binom: need n >= 1");
    if (!(p > 0.0 && p < 1.0)) throw precondition_error("binom: need p in (0,1)");
    Distribution d;
    d.kind = Kind::Binom;
    d.m = n;
    d.p = p;
    return d;
}

Distribution Distribution::scaled_coin_noise(int m_prime, double sigma) {
    if (m_prime < 1) throw precondition_error("scaled coin noise: need m' >= 1");
    if (!(sigma >= 0.0)) throw precondition_error("scaled coin noise: need sigma >= 0");
    Distribution d;
    d.kind = Kind::ScaledCoinNoise;
    d.m = m_prime;
    d.sigma = sigma;
    return d;
}

bool Distribution::is_discrete() const noexcept {
    return kind == Kind::Equal || kind == Kind::Binom || kind == Kind::ScaledCoinNoise;
}

namespace {

double equal_atom(int k, int m, double a, double b) {
    return a + (b - a) * static_cast<double>(k) / static_cast<double>(m - 1);
}

// Atom k of the scaled coin noise, written as (k - m'/2) * step so that
// opposite atoms are exact negations and the support is exactly symmetric.
double coin_atom(int k, int m_prime, double sigma) {
    const double step = 2.0 * sigma / std::sqrt(static_cast<double>(m_prime));
    return (static_cast<double>(2 * k - m_prime) / 2.0) * step;
}

} // namespace

double Distribution::draw(Rng& rng) const {
    switch (kind) {
        case Kind::Unif:
            return rng.uniform(a, b);
        case Kind::Norm:
            return mu + sigma * normal_quantile(rng.next_open_unit());
        case Kind::Equal:
            return equal_atom(static_cast<int>(rng.below(static_cast<std::uint64_t>(m))), m, a, b);
        case Kind::Binom: {
            int k = 0;
            for (int i = 0; i < m; ++i)
                if (rng.next_unit() < p) ++k;
            return static_cast<double>(k);
        }
        case Kind::ScaledCoinNoise: {
            int k = 0;
            for (int i = 0; i < m; ++i) k += static_cast<int>(rng.below(2));
            return coin_atom(k, m, sigma);
        }
    }
    throw precondition_error("distribution: unknown kind");
}

Pmf pmf_of(const Distribution& dist) {
    switch (dist.kind) {
        case Distribution::Kind::Unif:
        case Distribution::Kind::Norm:
            throw precondition_error("pmf_of: distribution is continuous");
        case Distribution::Kind::Equal: {
            std::vector<double> vals(dist.m), probs(dist.m, 1.0 / dist.m);
            for (int k = 0; k < dist.m; ++k) vals[k] = equal_atom(k, dist.m, dist.a, dist.b);
            return Pmf(std::move(vals), std::move(probs));
        }
        case Distribution::Kind::Binom: {
            std::vector<double> vals(dist.m + 1), probs(dist.m + 1);
            for (int k = 0; k <= dist.m; ++k) {
                vals[k] = static_cast<double>(k);
                double c = 1.0;
                for (int i = 0; i < k; ++i) c = c * static_cast<double>(dist.m - i) / (i + 1);
                probs[k] = c * std::pow(dist.p, k) * std::pow(1.0 - dist.p, dist.m - k);
            }
            return Pmf(std::move(vals), std::move(probs));
        }
        case Distribution::Kind::ScaledCoinNoise: {
            std::vector<double> vals(dist.m + 1), probs(dist.m + 1);
            const double half = std::ldexp(1.0, -dist.m); // 2^-m'
            for (int k = 0; k <= dist.m; ++k) {
                vals[k] = coin_atom(k, dist.m, dist.sigma);
                double c = 1.0;
                for (int i = 0; i < k; ++i) c = c * static_cast<double>(dist.m - i) / (i + 1);
                probs[k] = c * half;
            }
            return Pmf(std::move(vals), std::move(probs));
        }
    }
    throw precondition_error("pmf_of: unknown kind");
}

ModelSpec ModelSpec::defaults(int id) {
    ModelSpec spec;
    spec.id = id;
    switch (id) {
        case 1:
        case 2:
        case 3:
        case 8:
            break;
        case 4:
            spec.p = 0.4;
            spec.p_prime = 0.5;
            break;
        case 5:
        case 6:
        case 7:
            spec.m = 6;
            spec.m_prime = 2;
            break;
        case 9:
            spec.m = 3;
            spec.m_prime = 6;
            break;
        case 10:
            spec.m = 3;
            spec.p = 0.5;
            spec.m_prime = 6;
            spec.p_prime = 0.3;
            break;
        default:
            throw precondition_error("model: id must be 1..10");
    }
    spec.validate();
    return spec;
}

void ModelSpec::validate() const {
    if (id < 1 || id > 10) throw precondition_error("model: id must be 1..10");
    if (!(a < b)) throw precondition_error("model: need a < b");
    if (uses_sigma() && !(sigma >= 0.0)) throw precondition_error("model: need sigma >= 0");
    if (id == 4 || id == 10) {
        if (!(p > 0.0 && p < 1.0)) throw precondition_error("model: need p in (0,1)");
        if (!(p_prime > 0.0 && p_prime < 1.0)) throw precondition_error("model: need p' in (0,1)");
    }
    if (id >= 5 && id <= 7) {
        if (m < 2) throw precondition_error("model: need m >= 2");
        if (m_prime < 1) throw precondition_error("model: need m' >= 1");
    }
    if (id == 9 && (m < 2 || m_prime < 2))
        throw precondition_error("model: need m, m' >= 2");
    if (id == 10 && (m < 1 || m_prime < 1))
        throw precondition_error("model: need m, m' >= 1");
}

double model_regression(int id, double x) {
    switch (id) {
        case 1:
        case 5:
            return x;
        case 2:
        case 6:
            return x * x;
        case 3:
        case 7:
            return std::sin(2.0 * std::numbers::pi * x);
        default:
            throw precondition_error("model: no regression function for id " + std::to_string(id));
    }
}

PairedSample sample_model(const ModelSpec& spec, int n, Seed seed) {
    spec.validate();
    if (n < 2) throw precondition_error("sample_model: need n >= 2");

    PairedSample sample;
    sample.xs.resize(n);
    sample.ys.resize(n);
    Rng rng(seed.with(seed_tag::draw));

    switch (spec.id) {
        case 1:
        case 2:
        case 3: {
            const auto x_dist = Distribution::unif(spec.a, spec.b);
            for (int i = 0; i < n; ++i) {
                const double x = x_dist.draw(rng);
                const double eps =
                    spec.sigma == 0.0 ? 0.0 : spec.sigma * normal_quantile(rng.next_open_unit());
                sample.xs[i] = x;
                sample.ys[i] = model_regression(spec.id, x) + eps;
            }
            break;
        }
        case 4: {
            for (int i = 0; i < n; ++i) {
                const double x = rng.next_unit() < spec.p ? 1.0 : 0.0;
                const double z = rng.next_unit() < spec.p_prime ? 1.0 : 0.0;
                sample.xs[i] = x;
                sample.ys[i] = x * z;
            }
            break;
        }
        case 5:
        case 6:
        case 7: {
            const auto x_dist = Distribution::equal(spec.m, spec.a, spec.b);
            const auto noise = Distribution::scaled_coin_noise(spec.m_prime, spec.sigma);
            for (int i = 0; i < n; ++i) {
                const double x = x_dist.draw(rng);
                sample.xs[i] = x;
                sample.ys[i] = model_regression(spec.id, x) + noise.draw(rng);
            }
            break;
        }
        case 8: {
            const auto dist = Distribution::unif(spec.a, spec.b);
            for (int i = 0; i < n; ++i) {
                sample.xs[i] = dist.draw(rng);
                sample.ys[i] = dist.draw(rng);
            }
            break;
        }
        case 9: {
            const auto x_dist = Distribution::equal(spec.m, spec.a, spec.b);
            const auto y_dist = Distribution::equal(spec.m_prime, spec.a, spec.b);
            for (int i = 0; i < n; ++i) {
                sample.xs[i] = x_dist.draw(rng);
                sample.ys[i] = y_dist.draw(rng);
            }
            break;
        }
        case 10: {
            const auto x_dist = Distribution::binom(spec.m, spec.p);
            const auto y_dist = Distribution::binom(spec.m_prime, spec.p_prime);
            for (int i = 0; i < n; ++i) {
                sample.xs[i] = x_dist.draw(rng);
                sample.ys[i] = y_dist.draw(rng);
            }
            break;
        }
        default:
            throw precondition_error("model: id must be 1..10");
    }
    return sample;
}

} // namespace xicor
