#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "test_support.hpp"
#include "xicor/study.hpp"
#include "xicor/truth.hpp"

using namespace xicor;

namespace {

const QuadratureSpec kTight{1e-10, 1e-10, 10.0};

// Full conditional-probability ratio, all four layers numeric. Independent
// route against the simplified continuous-Y shortcut.
double xi_full_ratio(const ContinuousLaw& law) {
    const QuadratureSpec outer{1e-7, 1e-7, 10.0};
    const QuadratureSpec inner{1e-9, 1e-9, 10.0};
    auto marginal_tail = [&](double t) {
        return integrate_adaptive(
            [&](double x) { return law.p_y_ge_t(t, x) * law.x_density(x); }, law.x_lo, law.x_hi,
            inner);
    };
    auto mean_sq = [&](double t) {
        return integrate_adaptive(
            [&](double x) {
                const double p = law.p_y_ge_t(t, x);
                return p * p * law.x_density(x);
            },
            law.x_lo, law.x_hi, inner);
    };
    auto density = [&](double t) {
        return integrate_adaptive(
            [&](double x) { return law.x_density(x) * law.y_density_at_x(t, x); }, law.x_lo,
            law.x_hi, inner);
    };
    const double numerator = integrate_adaptive(
        [&](double t) {
            const double p = marginal_tail(t);
            return density(t) * (mean_sq(t) - p * p);
        },
        law.y_lo, law.y_hi, outer);
    const double denominator = integrate_adaptive(
        [&](double t) {
            const double p = marginal_tail(t);
            return density(t) * p * (1.0 - p);
        },
        law.y_lo, law.y_hi, outer);
    return numerator / denominator;
}

} // namespace

TEST_CASE("integrate_adaptive: closed-form integrals") {
    CHECK(integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, kTight) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(integrate_adaptive([](double z) { return normal_pdf(z); }, -10.0, 10.0, kTight) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi,
                             kTight) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("integrate_adaptive: error paths") {
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 1.0, 0.0, kTight),
                    precondition_error);
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, kTight),
                    numeric_error); // f(0) is infinite
    // Oscillation packed near the origin exhausts the subdivision budget.
    const QuadratureSpec strict{1e-12, 1e-12, 10.0};
    CHECK_THROWS_AS(
        integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 1e-9, 1.0, strict),
        numeric_error);

    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), precondition_error);
    bad = QuadratureSpec{};
    bad.truncation = 5.0;
    CHECK_THROWS_AS(bad.validate(), precondition_error);
}

TEST_CASE("xi_continuous_numeric: independence gives 0 (model 8 law)") {
    const double xi = xi_continuous_numeric(continuous_law(ModelSpec::defaults(8)));
    CHECK(std::fabs(xi) < 1e-6);
}

TEST_CASE("xi_continuous_numeric: near-functional dependence approaches 1") {
    // At sigma = 0.01 the true value is 0.98317 (1 - xi shrinks linearly in
    // sigma); confirmed by simulation at n = 2 * 10^4.
    ModelSpec spec = ModelSpec::defaults(1);
    spec.sigma = 0.01;
    const double xi = xi_continuous_numeric(continuous_law(spec));
    CHECK(xi > 0.97);
    CHECK(std::fabs(xi - 1.0) < 0.02);
}

TEST_CASE("model 1: symbolic and numeric paths agree") {
    for (double sigma : {0.1, 0.5, 1.0}) {
        ModelSpec spec = ModelSpec::defaults(1);
        spec.sigma = sigma;
        const double numeric = xi_continuous_numeric(continuous_law(spec));
        const double symbolic = xi_model1_symbolic(-1.0, 1.0, sigma);
        CHECK(std::fabs(numeric - symbolic) < 1e-6);
    }
}

TEST_CASE("model 1 inner integral: antiderivative transcription check") {
    // d/dz [ z Phi(z)^2 + 2 Phi(z) phi(z) - Phi(z sqrt 2)/sqrt(pi) ] = Phi(z)^2.
    auto G = [](double z) {
        return z * normal_cdf(z) * normal_cdf(z) + 2.0 * normal_cdf(z) * normal_pdf(z) -
               normal_cdf(z * std::numbers::sqrt2) / std::sqrt(std::numbers::pi);
    };
    const double h = 1e-5;
    for (double z : {-3.0, -1.2, -0.3, 0.0, 0.4, 1.1, 2.7}) {
        const double derivative = (G(z + h) - G(z - h)) / (2.0 * h);
        const double target = normal_cdf(z) * normal_cdf(z);
        CHECK(derivative == doctest::Approx(target).epsilon(1e-8));
    }
}

TEST_CASE("xi_model1_symbolic: limits, range and rejections") {
    CHECK(std::fabs(xi_model1_symbolic(-1.0, 1.0, 50.0)) < 1e-3);
    CHECK(std::fabs(xi_model1_symbolic(-1.0, 1.0, 0.01) - 1.0) < 0.02);
    CHECK(xi_model1_symbolic(-1.0, 1.0, 0.01) > 0.97);
    for (double sigma : {0.05, 0.2, 0.8, 3.0}) {
        const double xi = xi_model1_symbolic(-2.0, 0.5, sigma);
        CHECK(xi >= 0.0);
        CHECK(xi <= 1.0);
    }
    CHECK_THROWS_AS(xi_model1_symbolic(1.0, -1.0, 0.5), precondition_error);
    CHECK_THROWS_AS(xi_model1_symbolic(-1.0, 1.0, 0.0), precondition_error);
}

TEST_CASE("xi_model4_closed: value, limits, rejections") {
    CHECK(std::fabs(xi_model4_closed(0.4, 0.5) - 0.375) <= 1e-15);
    CHECK(xi_model4_closed(0.4, 1e-12) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(xi_model4_closed(0.0, 0.7) == 0.7);
    CHECK_THROWS_AS(xi_model4_closed(1.0, 0.5), precondition_error);
    CHECK_THROWS_AS(xi_model4_closed(0.4, 0.0), precondition_error);
    CHECK_THROWS_AS(xi_model4_closed(-0.1, 0.5), precondition_error);
}

TEST_CASE("xi_model4_closed: generic conditional-law route approaches p' as p -> 0") {
    ModelSpec spec = ModelSpec::defaults(4);
    spec.p = 0.01;
    spec.p_prime = 0.7;
    const double generic = xi_discrete_conditional(discrete_law(spec));
    CHECK(std::fabs(generic - xi_model4_closed(0.01, 0.7)) < 1e-12);
    CHECK(std::fabs(generic - 0.7) < 0.01);
}

TEST_CASE("xi_discrete: independence, functional dependence, constant-Y rejection") {
    const Pmf x = pmf_of(Distribution::equal(5, -1, 1));
    const Pmf noise = pmf_of(Distribution::scaled_coin_noise(2, 0.4));

    CHECK(std::fabs(xi_discrete(x, noise, [](double) { return 0.0; })) <= 1e-12);

    // sigma = 0 noise and injective f: numerator and denominator coincide.
    CHECK(xi_discrete(x, Pmf::point_mass(0.0), [](double v) { return v; }) == 1.0);

    CHECK_THROWS_AS(xi_discrete(x, Pmf::point_mass(0.0), [](double) { return 3.0; }),
                    precondition_error);
}

TEST_CASE("xi_discrete: model 4 law matches the closed form to 1e-12") {
    const double closed = xi_model4_closed(0.4, 0.5);
    const double generic = xi_discrete_conditional(discrete_law(ModelSpec::defaults(4)));
    CHECK(std::fabs(generic - closed) <= 1e-12);
}

TEST_CASE("discrete_convolution: identity, binomial halves, collisions") {
    const Pmf coin({0.0, 1.0}, {0.5, 0.5});
    const Pmf sum = discrete_convolution(coin, coin);
    CHECK(sum.values() == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(sum.probs() == std::vector<double>{0.25, 0.5, 0.25});

    const Pmf anything({-2.0, 0.5, 3.0}, {0.2, 0.5, 0.3});
    const Pmf same = discrete_convolution(Pmf::point_mass(0.0), anything);
    CHECK(same.values() == anything.values());
    CHECK(same.probs() == anything.probs());

    // equal(2,-1,1) with a two-point coin: four atoms of mass 1/4 while the
    // supports stay apart, three atoms once the middles collide.
    const Pmf equal2 = pmf_of(Distribution::equal(2, -1, 1));
    const Pmf apart = discrete_convolution(equal2, pmf_of(Distribution::scaled_coin_noise(1, 0.25)));
    CHECK(apart.size() == 4);
    for (double p : apart.probs()) CHECK(p == 0.25);
    const Pmf collide = discrete_convolution(equal2, pmf_of(Distribution::scaled_coin_noise(1, 1.0)));
    CHECK(collide.size() == 3);
    CHECK(collide.probs() == std::vector<double>{0.25, 0.5, 0.25});
}

TEST_CASE("Pmf: merging, moments, validation") {
    const Pmf merged({1.0, 1.0 + 5e-13, 2.0}, {0.25, 0.25, 0.5});
    CHECK(merged.size() == 2);
    CHECK(merged.probs() == std::vector<double>{0.5, 0.5});
    CHECK(merged.mean() == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(Pmf({1.0, 2.0}, {0.6, 0.6}), precondition_error);
    CHECK_THROWS_AS(Pmf({1.0, 2.0}, {1.2, -0.2}), precondition_error);
    CHECK_THROWS_AS(Pmf({}, {}), precondition_error);

    Pmf total(std::vector<double>{0.0, 1.0, 3.5}, std::vector<double>{0.2, 0.3, 0.5});
    double mass = 0.0;
    for (double p : total.probs()) mass += p;
    CHECK(std::fabs(mass - 1.0) <= 1e-12);
    const Pmf moved = total.shifted(2.0);
    CHECK(moved.values() == std::vector<double>{2.0, 3.0, 5.5});
    CHECK(moved.variance() == doctest::Approx(total.variance()).epsilon(1e-12));
}

TEST_CASE("full conditional-probability ratio agrees with the continuous shortcut") {
    ModelSpec m1 = ModelSpec::defaults(1);
    m1.sigma = 0.5;
    CHECK(std::fabs(xi_full_ratio(continuous_law(m1)) - xi_true(m1)) < 1e-5);

    ModelSpec m2 = ModelSpec::defaults(2);
    m2.sigma = 0.3;
    CHECK(std::fabs(xi_full_ratio(continuous_law(m2)) - xi_true(m2)) < 1e-5);
}

TEST_CASE("xi_true: dispatch values") {
    CHECK(xi_true(ModelSpec::defaults(8)) == 0.0);
    CHECK(xi_true(ModelSpec::defaults(9)) == 0.0);
    CHECK(xi_true(ModelSpec::defaults(10)) == 0.0);
    CHECK(std::fabs(xi_true(ModelSpec::defaults(4)) - 0.375) <= 1e-15);

    // Frozen from the dual route: quadrature 0.839878, simulation mean
    // 0.839910 at n = 2 * 10^4.
    ModelSpec m1 = ModelSpec::defaults(1);
    m1.sigma = 0.1;
    const double xi = xi_true(m1);
    CHECK(xi == doctest::Approx(0.839878).epsilon(2e-3));
    CHECK(xi < 1.0);

    m1.sigma = 0.0;
    CHECK(xi_true(m1) == 1.0);

    ModelSpec m6 = ModelSpec::defaults(6);
    m6.sigma = 0.0;
    CHECK(xi_true(m6) == 1.0);

    ModelSpec bad;
    bad.id = 11;
    CHECK_THROWS_AS(xi_true(bad), precondition_error);
}

TEST_CASE("xi_true: strictly decreasing in the noise level") {
    // For the finite-support models xi depends on the atom ordering only, so
    // it is piecewise constant in sigma; the discrete grid below crosses an
    // ordering change between every pair of neighbours.
    const std::vector<double> continuous_grid{0.1, 0.3, 0.7, 1.5};
    const std::vector<double> discrete_grid{0.1, 0.2, 0.35, 0.55};
    for (int id : {1, 2, 3, 5, 6, 7}) {
        double previous = 1.1;
        for (double sigma : id <= 3 ? continuous_grid : discrete_grid) {
            ModelSpec spec = ModelSpec::defaults(id);
            spec.sigma = sigma;
            const double xi = xi_true(spec);
            CHECK(xi < previous);
            CHECK(xi >= 0.0);
            CHECK(xi <= 1.0);
            previous = xi;
        }
    }
}

TEST_CASE("Monte Carlo consistency: mean of the normalized estimator matches xi_true") {
    // N = 10^4 samples of size n = 10^4 per model; noise models at sigma 0.5.
    const int n = 10000;
    const int N = 10000;
    for (int id = 1; id <= 10; ++id) {
        ModelSpec spec = ModelSpec::defaults(id);
        if (spec.uses_sigma()) spec.sigma = 0.5;
        const double truth = xi_true(spec);

        double sum = 0.0;
        for (int t = 0; t < N; ++t) {
            const Seed trial = trial_seed(Seed{300}, id, n, static_cast<std::size_t>(t));
            const PairedSample sample = sample_model(spec, n, trial);
            sum += xi_normalized(sample, trial.with(seed_tag::statistic));
        }
        const double mc_mean = sum / N;
        INFO("model ", id, ": mc=", mc_mean, " truth=", truth);
        CHECK(std::fabs(mc_mean - truth) < 0.01);
    }
}
