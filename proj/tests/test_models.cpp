#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "test_support.hpp"
#include "xicor/models.hpp"
#include "xicor/resample.hpp"

using namespace xicor;

TEST_CASE("pmf_of: two-atom equal, Bernoulli, scaled coin") {
    const Pmf equal2 = pmf_of(Distribution::equal(2, -1, 1));
    CHECK(equal2.values() == std::vector<double>{-1.0, 1.0});
    CHECK(equal2.probs() == std::vector<double>{0.5, 0.5});

    const Pmf bern = pmf_of(Distribution::binom(1, 0.4));
    CHECK(bern.values() == std::vector<double>{0.0, 1.0});
    CHECK(bern.probs()[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(bern.probs()[1] == doctest::Approx(0.4).epsilon(1e-15));

    const Pmf coin = pmf_of(Distribution::scaled_coin_noise(2, 0.1));
    REQUIRE(coin.size() == 3);
    CHECK(coin.probs() == std::vector<double>{0.25, 0.5, 0.25});
    CHECK(coin.values()[0] == doctest::Approx(-0.1 * std::numbers::sqrt2).epsilon(1e-15));
    CHECK(coin.values()[1] == 0.0);
    CHECK(coin.values()[2] == doctest::Approx(0.1 * std::numbers::sqrt2).epsilon(1e-15));

    CHECK_THROWS_AS(pmf_of(Distribution::unif(-1, 1)), precondition_error);
    CHECK_THROWS_AS(pmf_of(Distribution::norm(0, 1)), precondition_error);
}

TEST_CASE("scaled coin noise: mean 0 and variance sigma^2 from the pmf") {
    for (auto [m_prime, sigma] : std::vector<std::pair<int, double>>{
             {1, 0.3}, {2, 0.1}, {3, 0.5}, {4, 1.0}, {6, 1.2}}) {
        const Pmf pmf = pmf_of(Distribution::scaled_coin_noise(m_prime, sigma));
        CHECK(std::fabs(pmf.mean()) <= 1e-15 * (1.0 + sigma));
        CHECK(pmf.variance() == doctest::Approx(sigma * sigma).epsilon(1e-12));
        // Symmetric support: atom k is the exact negation of atom m'-k.
        for (std::size_t k = 0; k < pmf.size(); ++k)
            CHECK(pmf.values()[k] == -pmf.values()[pmf.size() - 1 - k]);
    }
}

TEST_CASE("binomial pmf sums to one and matches its moments") {
    const Pmf b = pmf_of(Distribution::binom(6, 0.3));
    double mass = 0.0;
    for (double p : b.probs()) mass += p;
    CHECK(std::fabs(mass - 1.0) <= 1e-12);
    CHECK(b.mean() == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(b.variance() == doctest::Approx(6 * 0.3 * 0.7).epsilon(1e-12));
}

TEST_CASE("ModelSpec defaults follow the canonical parameterization") {
    const ModelSpec m5 = ModelSpec::defaults(5);
    CHECK(m5.m == 6);
    CHECK(m5.m_prime == 2);
    const ModelSpec m4 = ModelSpec::defaults(4);
    CHECK(m4.p == 0.4);
    CHECK(m4.p_prime == 0.5);
    const ModelSpec m9 = ModelSpec::defaults(9);
    CHECK(m9.m == 3);
    CHECK(m9.m_prime == 6);
    const ModelSpec m10 = ModelSpec::defaults(10);
    CHECK(m10.m == 3);
    CHECK(m10.p == 0.5);
    CHECK(m10.m_prime == 6);
    CHECK(m10.p_prime == 0.3);
    for (int id = 1; id <= 10; ++id) {
        CHECK(ModelSpec::defaults(id).a == -1.0);
        CHECK(ModelSpec::defaults(id).b == 1.0);
    }
}

TEST_CASE("ModelSpec validation rejects bad parameter sets") {
    CHECK_THROWS_AS(ModelSpec::defaults(0), precondition_error);
    CHECK_THROWS_AS(ModelSpec::defaults(11), precondition_error);

    ModelSpec bad = ModelSpec::defaults(1);
    bad.sigma = -0.5;
    CHECK_THROWS_AS(bad.validate(), precondition_error);

    bad = ModelSpec::defaults(4);
    bad.p = 0.0;
    CHECK_THROWS_AS(bad.validate(), precondition_error);

    bad = ModelSpec::defaults(5);
    bad.m = 1;
    CHECK_THROWS_AS(bad.validate(), precondition_error);

    bad = ModelSpec::defaults(8);
    bad.a = 2.0;
    CHECK_THROWS_AS(bad.validate(), precondition_error);
}

TEST_CASE("model 7 uses the sine regression, not its prose label") {
    CHECK(model_regression(7, 0.25) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(model_regression(5, 0.3) == 0.3);
    CHECK(model_regression(6, 0.3) == doctest::Approx(0.09).epsilon(1e-15));
}

TEST_CASE("sample_model: zero noise copies the regression exactly") {
    ModelSpec spec = ModelSpec::defaults(1);
    spec.sigma = 0.0;
    const PairedSample s = sample_model(spec, 500, Seed{1});
    CHECK(s.xs == s.ys);
}

TEST_CASE("sample_model: determinism and seed sensitivity") {
    const ModelSpec spec = ModelSpec::defaults(3);
    const PairedSample a = sample_model(spec, 100, Seed{7});
    const PairedSample b = sample_model(spec, 100, Seed{7});
    CHECK(a.xs == b.xs);
    CHECK(a.ys == b.ys);
    const PairedSample c = sample_model(spec, 100, Seed{8});
    CHECK(a.xs != c.xs);
}

TEST_CASE("sample_model: model 4 hits P(Y=1) = p p' within 3 sigma") {
    const int n = 100000;
    const PairedSample s = sample_model(ModelSpec::defaults(4), n, Seed{11});
    int ones = 0;
    for (double y : s.ys) {
        CHECK((y == 0.0 || y == 1.0));
        if (y == 1.0) ++ones;
    }
    const double p_hat = static_cast<double>(ones) / n;
    const double se = std::sqrt(0.2 * 0.8 / n);
    CHECK(std::fabs(p_hat - 0.2) < 3.0 * se);
}

TEST_CASE("sample_model: model 5 noise matches the scaled-coin law") {
    ModelSpec spec = ModelSpec::defaults(5);
    spec.sigma = 0.5;
    const int n = 100000;
    const PairedSample s = sample_model(spec, n, Seed{13});
    const Pmf noise = pmf_of(Distribution::scaled_coin_noise(spec.m_prime, spec.sigma));

    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double eps = s.ys[i] - s.xs[i];
        double nearest = 1e9;
        for (double atom : noise.values()) nearest = std::min(nearest, std::fabs(eps - atom));
        CHECK(nearest < 1e-9);
        sum += eps;
        sum_sq += eps * eps;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::fabs(mean) < 4.0 * spec.sigma / std::sqrt(n));
    // Var of eps^2 is sigma^4 for the two-coin noise.
    CHECK(std::fabs(var - 0.25) < 4.0 * 0.25 / std::sqrt(n));
}

TEST_CASE("sample_model: uniform X moments for the continuous models") {
    const int n = 100000;
    for (int id : {1, 2, 3}) {
        const PairedSample s = sample_model(ModelSpec::defaults(id), n, Seed{17}.with(id));
        double sum = 0.0, sum_sq = 0.0;
        for (double x : s.xs) {
            CHECK(x >= -1.0);
            CHECK(x < 1.0);
            sum += x;
            sum_sq += x * x;
        }
        const double mean = sum / n;
        const double var = sum_sq / n - mean * mean;
        CHECK(std::fabs(mean) < 4.0 * std::sqrt(1.0 / 3.0 / n));
        CHECK(std::fabs(var - 1.0 / 3.0) < 4.0 * std::sqrt((1.0 / 5.0 - 1.0 / 9.0) / n));
    }
}

TEST_CASE("sample_model: discrete supports come from the exact pmf atoms") {
    const ModelSpec spec = ModelSpec::defaults(9);
    const PairedSample s = sample_model(spec, 5000, Seed{19});
    const Pmf x_pmf = pmf_of(Distribution::equal(spec.m, spec.a, spec.b));
    const Pmf y_pmf = pmf_of(Distribution::equal(spec.m_prime, spec.a, spec.b));
    const std::set<double> x_atoms(x_pmf.values().begin(), x_pmf.values().end());
    const std::set<double> y_atoms(y_pmf.values().begin(), y_pmf.values().end());
    for (double x : s.xs) CHECK(x_atoms.count(x) == 1);
    for (double y : s.ys) CHECK(y_atoms.count(y) == 1);

    const PairedSample t = sample_model(ModelSpec::defaults(10), 5000, Seed{23});
    for (double x : t.xs) CHECK((x == std::floor(x) && x >= 0.0 && x <= 3.0));
    for (double y : t.ys) CHECK((y == std::floor(y) && y >= 0.0 && y <= 6.0));
}

TEST_CASE("sample_model: disjoint seeds draw from the same law (two-sample KS)") {
    const int n = 10000;
    // 99% two-sample critical value: 1.628 sqrt(2/n).
    const double critical = 1.628 * std::sqrt(2.0 / n);
    for (int id : {1, 4, 8, 9}) {
        const ModelSpec spec = ModelSpec::defaults(id);
        const PairedSample a = sample_model(spec, n, Seed{29}.with(id));
        const PairedSample b = sample_model(spec, n, Seed{31}.with(id));
        CHECK(kolmogorov_distance(a.ys, b.ys) < critical);
        CHECK(kolmogorov_distance(a.xs, b.xs) < critical);
    }
}

TEST_CASE("sample_model: rejects invalid requests") {
    CHECK_THROWS_AS(sample_model(ModelSpec::defaults(1), 1, Seed{0}), precondition_error);
    ModelSpec bad = ModelSpec::defaults(4);
    bad.p_prime = 1.5;
    CHECK_THROWS_AS(sample_model(bad, 100, Seed{0}), precondition_error);
}

TEST_CASE("distribution draws stay inside their supports") {
    Rng rng(Seed{37});
    const auto equal5 = Distribution::equal(5, -2, 2);
    const Pmf atoms = pmf_of(equal5);
    const std::set<double> support(atoms.values().begin(), atoms.values().end());
    for (int i = 0; i < 2000; ++i) CHECK(support.count(equal5.draw(rng)) == 1);

    const auto uniform = Distribution::unif(3, 4);
    for (int i = 0; i < 2000; ++i) {
        const double v = uniform.draw(rng);
        CHECK(v >= 3.0);
        CHECK(v < 4.0);
    }
}
