#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "../oracle.hpp"
#include "ppm/distributions.hpp"
#include "ppm/error.hpp"
#include "ppm/random.hpp"

using namespace ppm;
using doctest::Approx;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("construction rejects invalid parameters") {
    CHECK_THROWS_AS(DistributionSpec::normal(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(DistributionSpec::normal(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(DistributionSpec::student_t(0.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(DistributionSpec::bernoulli(1.5), DomainError);
    CHECK_THROWS_AS(DistributionSpec::bernoulli(-0.1), DomainError);
    CHECK_THROWS_AS(DistributionSpec::truncated_normal(0.0, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(DistributionSpec::normal(std::nan(""), 1.0), DomainError);
}

TEST_CASE("log_density point values") {
    CHECK(log_density(DistributionSpec::normal(0, 1), 0.0) == Approx(-0.5 * std::log(2.0 * std::numbers::pi)).epsilon(1e-15));
    CHECK(log_density(DistributionSpec::bernoulli(0.75), 1.0) == Approx(std::log(0.75)).epsilon(1e-15));
    CHECK(log_density(DistributionSpec::bernoulli(0.75), 0.0) == Approx(std::log(0.25)).epsilon(1e-15));
    CHECK(log_density(DistributionSpec::bernoulli(0.75), 0.5) == -kInf);
    CHECK(log_density(DistributionSpec::truncated_normal(0, 1, 0.0), -0.5) == -kInf);
    // Half-normal density is twice the normal density.
    CHECK(log_density(DistributionSpec::truncated_normal(0, 1, 0.0), 0.3) ==
          Approx(std::log(2.0 * oracle::normal_pdf(0.3))).epsilon(1e-13));
    // Cauchy density.
    CHECK(log_density(DistributionSpec::student_t(0, 1, 1), 1.0) == Approx(-std::log(2.0 * std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("cdf point values") {
    CHECK(cdf(DistributionSpec::normal(0, 1), 0.0) == Approx(0.5));
    CHECK(cdf(DistributionSpec::normal(1.0, 0.1), 1.2) == Approx(oracle::normal_cdf(2.0)).epsilon(1e-13));
    CHECK(1.0 - cdf(DistributionSpec::normal(1.0, 0.1), 1.2) == Approx(0.02275).epsilon(1e-4));
    CHECK(cdf(DistributionSpec::truncated_normal(0, 1, 0.0), 0.0) == 0.0);
    CHECK(cdf(DistributionSpec::truncated_normal(0, 1, 0.0), -3.0) == 0.0);
    CHECK(cdf(DistributionSpec::truncated_normal(0, 1, -kInf, 1.0), 2.0) == 1.0);
    CHECK(cdf(DistributionSpec::bernoulli(0.3), -0.1) == 0.0);
    CHECK(cdf(DistributionSpec::bernoulli(0.3), 0.0) == Approx(0.7));
    CHECK(cdf(DistributionSpec::bernoulli(0.3), 1.0) == 1.0);
}

TEST_CASE("student-t cdf agrees with density quadrature") {
    for (double nu : {1.0, 2.5, 4.0, 30.0}) {
        for (double t : {-6.0, -1.3, 0.0, 0.4, 2.0, 9.0}) {
            INFO("nu=" << nu << " t=" << t);
            CHECK(cdf(DistributionSpec::student_t(0, 1, nu), t) == Approx(oracle::student_t_cdf(t, nu)).epsilon(1e-9));
        }
    }
}

TEST_CASE("quantile point values and domain") {
    CHECK(quantile(DistributionSpec::normal(0, 1), 0.5) == Approx(0.0));
    CHECK(quantile(DistributionSpec::normal(0, 1), 0.975) == Approx(oracle::normal_quantile(0.975)).epsilon(1e-12));
    CHECK(quantile(DistributionSpec::normal(0, 1), 0.975) == Approx(1.959964).epsilon(1e-6));
    CHECK(quantile(DistributionSpec::student_t(0, 1, 1), 0.75) == Approx(std::tan(std::numbers::pi / 4)).epsilon(1e-9));
    CHECK_THROWS_AS(quantile(DistributionSpec::normal(0, 1), 0.0), DomainError);
    CHECK_THROWS_AS(quantile(DistributionSpec::normal(0, 1), 1.0), DomainError);
    CHECK_THROWS_AS(quantile(DistributionSpec::normal(0, 1), std::nan("")), DomainError);
}

TEST_CASE("property: quantile(cdf(y)) round-trips in the central 99% region") {
    oracle::Gen gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        const double mu = gen.uniform(-5, 5), sigma = gen.uniform(0.05, 4);
        const int which = trial % 4;
        DistributionSpec d = DistributionSpec::normal(mu, sigma);
        if (which == 1) d = DistributionSpec::student_t(mu, sigma, gen.uniform(0.5, 50));
        if (which == 2) d = DistributionSpec::truncated_normal(mu, sigma, mu + gen.uniform(-2, 0.5) * sigma);
        if (which == 3) d = DistributionSpec::truncated_normal(mu, sigma, mu - 3 * sigma, mu + gen.uniform(-1, 3) * sigma);
        const double p = gen.uniform(0.005, 0.995);
        const double y = quantile(d, p);
        INFO("family=" << to_string(d.family()) << " p=" << p);
        CHECK(cdf(d, y) == Approx(p).epsilon(1e-9));
        CHECK(quantile(d, cdf(d, y)) == Approx(y).epsilon(1e-6).scale(sigma));
    }
}

TEST_CASE("property: cdf is monotone nondecreasing") {
    oracle::Gen gen(12);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = DistributionSpec::student_t(gen.uniform(-2, 2), gen.uniform(0.1, 3), gen.uniform(0.3, 20));
        double prev = 0.0;
        for (double y = -30; y <= 30; y += 0.25) {
            const double c = cdf(d, y);
            CHECK(c >= prev);
            CHECK(c <= 1.0);
            prev = c;
        }
    }
}

TEST_CASE("truncated normal density integrates to one") {
    struct Case { double mu, sigma, lo, hi; };
    for (auto c : {Case{0, 1, 0, kInf}, Case{0.14, 0.11, 0, kInf}, Case{2, 0.5, -kInf, 1.5}, Case{0, 1, -0.5, 0.7},
                   Case{-3, 1, 0, kInf}, Case{0, 2, 1, 9}}) {
        const auto d = DistributionSpec::truncated_normal(c.mu, c.sigma, c.lo, c.hi);
        const double a = std::isfinite(c.lo) ? c.lo : c.mu - 40 * c.sigma;
        const double b = std::isfinite(c.hi) ? c.hi : c.mu + 40 * c.sigma;
        const double total = oracle::integrate([&](double y) { return std::exp(log_density(d, y)); }, a, b, 1e-12);
        CHECK(total == Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("student-t with huge df is the normal") {
    const double mu = 0.3, sigma = 1.7;
    const auto t = DistributionSpec::student_t(mu, sigma, 1e6);
    const auto n = DistributionSpec::normal(mu, sigma);
    for (double y = mu - 4 * sigma; y <= mu + 4 * sigma; y += sigma / 8)
        CHECK(std::fabs(log_density(t, y) - log_density(n, y)) < 1e-3);
}

TEST_CASE("sampling moments and KS consistency") {
    RandomSource rng(2024);
    const auto bern = sample(DistributionSpec::bernoulli(0.75), rng, 100000);
    CHECK(std::fabs(oracle::mean(bern) - 0.75) < 0.01);

    const auto half = sample(DistributionSpec::truncated_normal(0, 1, 0.0), rng, 100000);
    CHECK(std::fabs(oracle::mean(half) - std::sqrt(2.0 / std::numbers::pi)) < 0.01);
    CHECK(*std::min_element(half.begin(), half.end()) >= 0.0);

    for (const auto& d : {DistributionSpec::normal(1.0, 0.1), DistributionSpec::student_t(0, 2, 3),
                          DistributionSpec::truncated_normal(0.14, 0.11, 0.0),
                          DistributionSpec::truncated_normal(5, 1, -kInf, -2.0)}) {
        const auto xs = sample(d, rng, 100000);
        INFO(to_string(d.family()));
        CHECK(oracle::ks_statistic(xs, [&](double y) { return cdf(d, y); }) < 0.01);
    }
}

TEST_CASE("far-tail truncation still samples inside the bounds") {
    RandomSource rng(3);
    const auto d = DistributionSpec::truncated_normal(0, 1, 12.0);
    for (double v : sample(d, rng, 1000)) CHECK(v >= 12.0);
    const auto e = DistributionSpec::truncated_normal(0, 1, -kInf, -15.0);
    for (double v : sample(e, rng, 1000)) CHECK(v <= -15.0);
}

TEST_CASE("sampling is deterministic per seed and rejects n = 0") {
    RandomSource a(99), b(99);
    const auto d = DistributionSpec::student_t(0, 1, 4);
    CHECK(sample(d, a, 50) == sample(d, b, 50));
    CHECK_THROWS_AS(sample(d, a, 0), DomainError);
}
