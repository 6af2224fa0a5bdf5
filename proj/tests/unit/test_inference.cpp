#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "../oracle.hpp"
#include "ppm/error.hpp"
#include "ppm/experiments.hpp"
#include "ppm/inference.hpp"
#include "ppm/prediction.hpp"
#include "ppm/random.hpp"
#include "ppm/simulate.hpp"

using namespace ppm;
using doctest::Approx;

namespace {

FitConfig quick_config(std::uint64_t seed) {
    FitConfig c;
    c.chains = 4;
    c.warmup = 2000;
    c.samples = 500;
    c.thin = 2;
    c.seed = seed;
    return c;
}

double posterior_sd(const PosteriorDraws& d, std::size_t j) {
    return std::sqrt(oracle::variance(d.column(j)));
}

}  // namespace

TEST_CASE("log posterior closed form") {
    ModelSpec m = regression_model(MeanForm::Linear);
    const Dataset one = make_dataset({0.0}, {0.3});
    const double theta[] = {0.3, 0.0, 1.0};
    const double prior = log_density(m.priors[0], 0.3) + log_density(m.priors[1], 0.0) +
                         log_density(m.priors[2], 1.0);
    CHECK(log_likelihood(m, one, theta) == Approx(-0.5 * std::log(2 * std::numbers::pi)).epsilon(1e-14));
    CHECK(log_posterior(m, one, theta) == Approx(prior - 0.5 * std::log(2 * std::numbers::pi)));
}

TEST_CASE("log posterior is additive over rows") {
    const ModelSpec m = regression_model(MeanForm::TrueModel);
    const Dataset all = simulate_dataset(40, 3.25, 0.2, 0.1, 5);
    Dataset a = all, b = all;
    a.x.resize(15);
    a.y.resize(15);
    b.x.erase(b.x.begin(), b.x.begin() + 15);
    b.y.erase(b.y.begin(), b.y.begin() + 15);
    oracle::Gen gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        const double theta[] = {gen.uniform(0.5, 6), gen.uniform(-1, 1), gen.uniform(0.05, 1)};
        double prior = 0.0;
        for (std::size_t j = 0; j < 3; ++j) prior += log_density(m.priors[j], theta[j]);
        CHECK(log_posterior(m, all, theta) ==
              Approx(log_posterior(m, a, theta) + log_posterior(m, b, theta) - prior).epsilon(1e-12));
    }
}

TEST_CASE("log posterior support and errors") {
    const ModelSpec m = regression_model(MeanForm::TrueModel);
    const Dataset d = simulate_dataset(10, 3.25, 0.2, 0.1, 1);
    const double bad_sigma[] = {3.25, 0.2, -0.1};
    const double zero_sigma[] = {3.25, 0.2, 0.0};
    CHECK(log_posterior(m, d, bad_sigma) == -std::numeric_limits<double>::infinity());
    CHECK(log_posterior(m, d, zero_sigma) == -std::numeric_limits<double>::infinity());
    const double short_theta[] = {3.25, 0.2};
    CHECK_THROWS_AS(log_posterior(m, d, short_theta), DomainError);
    const double theta[] = {3.25, 0.2, 0.1};
    CHECK_THROWS_AS(log_posterior(m, Dataset{}, theta), DomainError);
}

TEST_CASE("fit config validation") {
    FitConfig c;
    CHECK_NOTHROW(c.validate());
    for (auto mutate : {+[](FitConfig& f) { f.chains = 0; }, +[](FitConfig& f) { f.warmup = 0; },
                        +[](FitConfig& f) { f.samples = 0; }, +[](FitConfig& f) { f.thin = 0; },
                        +[](FitConfig& f) { f.initial_scale = 0.0; },
                        +[](FitConfig& f) { f.target_accept = 1.0; }}) {
        FitConfig bad;
        mutate(bad);
        CHECK_THROWS_AS(bad.validate(), DomainError);
    }
}

TEST_CASE("fit recovers the running example") {
    const ModelSpec m = experiments::standard_model(MeanForm::TrueModel);
    const Dataset d = simulate_dataset(100, 3.25, 0.2, 0.1, 1);
    const PosteriorDraws draws = fit(m, d, quick_config(3));
    REQUIRE(draws.n_draws() == 4 * 500);
    REQUIRE(draws.n_chains() == 4);
    const double truth[] = {3.25, 0.2, 0.1};
    for (std::size_t j = 0; j < 3; ++j) {
        const double mean = oracle::mean(draws.column(j));
        CHECK(std::fabs(mean - truth[j]) < 3.0 * posterior_sd(draws, j));
    }
    REQUIRE(draws.diagnostics().has_value());
    CHECK(draws.diagnostics()->max_rhat() <= 1.05);
    for (std::size_t i = 0; i < draws.n_draws(); ++i)
        CHECK(std::isfinite(log_posterior(m, d, draws.row(i))));
}

TEST_CASE("fit is deterministic and thread independent") {
    const ModelSpec m = experiments::standard_model(MeanForm::TrueModel);
    const Dataset d = simulate_dataset(30, 3.25, 0.2, 0.1, 2);
    FitConfig c = quick_config(9);
    c.warmup = 300;
    c.samples = 100;
    const PosteriorDraws a = fit(m, d, c);
    c.threads = 4;
    const PosteriorDraws b = fit(m, d, c);
    CHECK(a == b);
    c.seed = 10;
    CHECK_FALSE(fit(m, d, c) == a);
}

TEST_CASE("retained draw count is exact") {
    const ModelSpec m = regression_model(MeanForm::Linear);
    const Dataset d = simulate_dataset(20, 3.25, 0.2, 0.1, 2);
    for (std::size_t thin : {1u, 3u}) {
        FitConfig c;
        c.chains = 3;
        c.warmup = 50;
        c.samples = 37;
        c.thin = thin;
        const PosteriorDraws p = fit(m, d, c);
        CHECK(p.n_draws() == 3 * 37);
        for (std::size_t i = 0; i < p.n_draws(); ++i) CHECK(p.chain(i) == i / 37);
    }
}

TEST_CASE("all chains stuck raises a fit error with diagnostics") {
    const ModelSpec m = regression_model(MeanForm::TrueModel);
    const Dataset d = simulate_dataset(20, 3.25, 0.2, 0.1, 2);
    FitConfig c;
    c.chains = 2;
    c.warmup = 1;
    c.samples = 20;
    c.initial_scale = 1e200;
    try {
        fit(m, d, c);
        FAIL("expected FitError");
    } catch (const FitError& e) {
        REQUIRE(e.diagnostics().has_value());
        CHECK(e.diagnostics()->acceptance == std::vector<double>{0.0, 0.0});
    }
}

TEST_CASE("plug-in fit interpolates noiseless quadratic data") {
    // Exact data make the posterior unbounded as sigma -> 0, so the scale is pinned.
    ModelSpec m = regression_model(MeanForm::Quadratic);
    m.priors[3] = DistributionSpec::truncated_normal(1e-3, 1e-6, 0.0);
    std::vector<double> x, y;
    for (int i = 0; i <= 20; ++i) {
        x.push_back(i / 20.0);
        y.push_back(0.3 - 1.2 * x.back() + 2.5 * x.back() * x.back());
    }
    const Dataset d = make_dataset(x, y);
    const auto theta = plug_in_fit(m, d);
    CHECK(std::fabs(theta[0] - 0.3) < 1e-4);
    CHECK(std::fabs(theta[1] + 1.2) < 1e-4);
    CHECK(std::fabs(theta[2] - 2.5) < 1e-4);
    CHECK(plug_in_fit(m, d) == theta);
}

TEST_CASE("plug-in estimate dominates every retained draw") {
    const ModelSpec m = regression_model(MeanForm::Quadratic);
    const Dataset d = subsample_every_kth(simulate_dataset(100, 3.25, 0.2, 0.1, 1), 8);
    const auto theta = plug_in_fit(m, d);
    const double best = log_posterior(m, d, theta);
    FitConfig c = quick_config(4);
    c.samples = 250;
    const PosteriorDraws draws = fit(m, d, c);
    for (std::size_t i = 0; i < draws.n_draws(); ++i) CHECK(best >= log_posterior(m, d, draws.row(i)) - 1e-6);
}

TEST_CASE("fit ensemble") {
    const ModelSpec m = experiments::standard_model(MeanForm::TrueModel);
    const Dataset d = simulate_dataset(100, 3.25, 0.2, 0.1, 1);
    FitConfig c = quick_config(1);
    c.warmup = 1000;
    c.samples = 1000;

    const auto same = fit_ensemble(m, d, {1, 1}, c);
    REQUIRE(same.size() == 2);
    CHECK(same[0] == same[1]);

    const auto two = fit_ensemble(m, d, {1, 2}, c);
    CHECK(two[0] == same[0]);
    RandomSource rng(5);
    const auto single = posterior_predictive(m, two[0], 0.5, 1, rng);
    const auto pooled = average_predictions({single, posterior_predictive(m, two[1], 0.5, 1, rng)});
    const double mcse = std::sqrt(oracle::variance(single.samples) / static_cast<double>(single.samples.size()));
    CHECK(std::fabs(oracle::mean(pooled.samples) - oracle::mean(single.samples)) < 2.0 * mcse);

    CHECK_THROWS_AS(fit_ensemble(m, d, {}, c), DomainError);
    CHECK_THROWS_AS(fit_ensemble(m, d, {1}, c), DomainError);
}

TEST_CASE("posterior contracts as n grows") {
    const ModelSpec m = experiments::standard_model(MeanForm::TrueModel);
    double sd_small = 0.0, sd_large = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        FitConfig c = quick_config(seed);
        c.warmup = 1000;
        sd_small += posterior_sd(fit(m, simulate_dataset(50, 3.25, 0.2, 0.1, seed), c), 0);
        sd_large += posterior_sd(fit(m, simulate_dataset(100, 3.25, 0.2, 0.1, seed), c), 0);
    }
    CHECK(sd_large <= 1.1 * sd_small);
}

TEST_CASE("draws csv round-trip") {
    const PosteriorDraws d({"a", "b"}, {0.1, 1.0 / 3.0, -2.5, 1e-300}, {0, 1});
    std::ostringstream os;
    write_draws_csv(d, os);
    CHECK(os.str().rfind("a,b,chain\n", 0) == 0);
    std::istringstream is(os.str());
    CHECK(read_draws_csv(is) == d);

    std::istringstream plug("a,b\n0.5,2\n");
    const PosteriorDraws p = read_draws_csv(plug);
    CHECK(p.n_draws() == 1);
    CHECK(p.value(0, 1) == 2.0);
}
