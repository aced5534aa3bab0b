#pragma once

#include "xicor/pmf.hpp"
#include "xicor/rankcore.hpp"
#include "xicor/rng.hpp"

namespace xicor {

// Building-block distribution for the simulated models.
struct Distribution {
    enum class Kind { Unif, Norm, Equal, Binom, ScaledCoinNoise };

    Kind kind = Kind::Unif;
    double a = -1.0, b = 1.0; // Unif / Equal range
    double mu = 0.0;          // Norm mean
    double sigma = 1.0;       // Norm / ScaledCoinNoise standard deviation
    int m = 1;                // Equal atom count, Binom size, coin count
    double p = 0.5;           // Binom success probability

    static Distribution unif(double a, double b);
    static Distribution norm(double mu, double sigma);
    // m equally spaced atoms from a to b (endpoints included), probability 1/m each.
    static Distribution equal(int m, double a, double b);
    static Distribution binom(int n, double p);
    // -sigma*sqrt(m') + (2*sigma/sqrt(m')) * binom(m', 1/2): mean 0, variance sigma^2.
    static Distribution scaled_coin_noise(int m_prime, double sigma);

    bool is_discrete() const noexcept;
    double draw(Rng& rng) const;
};

// Exact finite pmf of a discrete building block; rejects continuous kinds.
Pmf pmf_of(const Distribution& dist);

// One of the ten data-generating processes.
//   1: Y = X + eps            X ~ unif(a,b),     eps ~ norm(0, sigma^2)
//   2: Y = X^2 + eps          X ~ unif(a,b),     eps ~ norm(0, sigma^2)
//   3: Y = sin(2 pi X) + eps  X ~ unif(a,b),     eps ~ norm(0, sigma^2)
//   4: Y = X Z                X ~ binom(1,p),    Z ~ binom(1,p')
//   5: Y = X + eps            X ~ equal(m,a,b),  eps ~ scaled coin (m', sigma)
//   6: Y = X^2 + eps          X ~ equal(m,a,b),  eps ~ scaled coin (m', sigma)
//   7: Y = sin(2 pi X) + eps  X ~ equal(m,a,b),  eps ~ scaled coin (m', sigma)
//   8: X, Y ~ unif(a,b) independent
//   9: X ~ equal(m,a,b), Y ~ equal(m',a,b) independent
//  10: X ~ binom(m,p),  Y ~ binom(m',p') independent
struct ModelSpec {
    int id = 1;
    double sigma = 0.1;
    int m = 6;
    int m_prime = 2;
    double p = 0.4;
    double p_prime = 0.5;
    double a = -1.0;
    double b = 1.0;

    // Canonical parameterization for a model id.
    static ModelSpec defaults(int id);

    void validate() const;

    bool uses_sigma() const noexcept { return (id >= 1 && id <= 3) || (id >= 5 && id <= 7); }
    bool is_discrete_y() const noexcept { return id == 4 || (id >= 5 && id <= 7) || id >= 9; }
    bool is_independent() const noexcept { return id >= 8; }
};

// The regression function f for models 1-3 and 5-7.
double model_regression(int id, double x);

// n i.i.d. pairs from the model law; deterministic in (spec, n, seed).
PairedSample sample_model(const ModelSpec& spec, int n, Seed seed);

} // namespace xicor
