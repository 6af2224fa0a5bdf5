#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../oracle.hpp"
#include "ppm/error.hpp"
#include "ppm/inference.hpp"
#include "ppm/prediction.hpp"
#include "ppm/random.hpp"

using namespace ppm;

namespace {

PredictiveDistribution from_samples(std::vector<double> s, double x = 0.0) {
    PredictiveDistribution p;
    p.x = x;
    p.samples = std::move(s);
    return p;
}

PredictiveDistribution normal_samples(double mu, double sd, std::size_t n, std::uint64_t seed) {
    oracle::Gen gen(seed);
    std::vector<double> s(n);
    for (auto& v : s) v = gen.normal(mu, sd);
    return from_samples(std::move(s));
}

PosteriorDraws repeated(const std::vector<double>& theta, std::size_t n) {
    std::vector<double> values;
    std::vector<std::size_t> chain;
    for (std::size_t i = 0; i < n; ++i) {
        values.insert(values.end(), theta.begin(), theta.end());
        chain.push_back(i % 2);
    }
    return PosteriorDraws({"theta1", "theta2", "sigma"}, values, chain);
}

}  // namespace

TEST_CASE("degenerate posterior reduces to plain sampling") {
    const ModelSpec m = regression_model(MeanForm::TrueModel);
    const PosteriorDraws d = repeated({3.25, 0.2, 0.1}, 1000);
    RandomSource rng(1);
    const auto pred = posterior_predictive(m, d, 0.5, 100, rng);
    REQUIRE(pred.samples.size() == 100000);
    CHECK(pred.provenance.n_draws == 1000);
    CHECK(pred.provenance.per_draw == 100);
    const double sd = std::sqrt(oracle::variance(pred.samples));
    CHECK(std::fabs(sd - 0.1) < 0.002);
    const double mu = 0.2 + std::tanh(3.25 * 0.5 / 2);
    CHECK(oracle::ks_statistic(pred.samples, [&](double y) { return oracle::normal_cdf((y - mu) / 0.1); }) < 0.01);

    const std::vector<double> theta = {3.25, 0.2, 0.1};
    RandomSource rng2(2);
    const auto plug = plug_in_predictive(m, theta, 0.5, 100000, rng2);
    CHECK(oracle::ks_two_sample(pred.samples, plug.samples) < 0.02);
    CHECK_THROWS_AS(plug_in_predictive(m, theta, 0.5, 0, rng2), DomainError);
    CHECK_THROWS_AS(posterior_predictive(m, d, 0.5, 0, rng2), DomainError);
}

TEST_CASE("truncation keeps samples in bounds and raises the mean") {
    ModelSpec m = regression_model(MeanForm::TrueModel);
    const PosteriorDraws d = repeated({3.25, 0.0, 0.2}, 2000);
    RandomSource a(3), b(3);
    const auto plain = posterior_predictive(m, d, 0.05, 20, a);
    m.truncation = Truncation{0.0, std::numeric_limits<double>::infinity()};
    const auto cut = posterior_predictive(m, d, 0.05, 20, b);
    CHECK(cut.provenance.truncated);
    CHECK(std::all_of(cut.samples.begin(), cut.samples.end(), [](double v) { return v >= 0.0; }));
    CHECK(std::any_of(plain.samples.begin(), plain.samples.end(), [](double v) { return v < 0.0; }));
    CHECK(oracle::mean(cut.samples) >= oracle::mean(plain.samples));
}

TEST_CASE("interval examples") {
    const auto point = from_samples(std::vector<double>(500, 2.5));
    const auto pi = interval(point, 0.95);
    CHECK(pi.lower == 2.5);
    CHECK(pi.upper == 2.5);

    const auto std_normal = normal_samples(0, 1, 100000, 4);
    const auto n95 = interval(std_normal, 0.95);
    CHECK(std::fabs(n95.lower + oracle::normal_quantile(0.975)) < 0.03);
    CHECK(std::fabs(n95.upper - oracle::normal_quantile(0.975)) < 0.03);

    oracle::Gen gen(5);
    std::vector<double> u(100000);
    for (auto& v : u) v = gen.uniform(0, 1);
    const auto half = interval(from_samples(u), 0.5);
    CHECK(std::fabs(half.lower - 0.25) < 0.01);
    CHECK(std::fabs(half.upper - 0.75) < 0.01);

    CHECK_THROWS_AS(interval(from_samples(std::vector<double>(99, 1.0)), 0.95), PrecisionError);
    CHECK_NOTHROW(interval(from_samples(std::vector<double>(100, 1.0)), 0.95));
    CHECK_THROWS_AS(interval(std_normal, 1.0), DomainError);
}

TEST_CASE("empirical quantile interpolates order statistics") {
    CHECK(empirical_quantile({3, 1, 2, 4}, 0.0) == 1.0);
    CHECK(empirical_quantile({3, 1, 2, 4}, 1.0) == 4.0);
    CHECK(empirical_quantile({3, 1, 2, 4}, 0.5) == 2.5);
    CHECK(empirical_quantile({0, 10}, 0.25) == 2.5);
}

TEST_CASE("exceedance examples") {
    const auto s = normal_samples(1.0, 0.1, 100000, 6);
    CHECK(prob_exceeds(s, -10.0, Direction::Above) == 1.0);
    const double tail = 1.0 - oracle::normal_cdf(2.0);
    CHECK(std::fabs(prob_exceeds(s, 1.2, Direction::Above) - tail) < 0.005);
}

TEST_CASE("interval and exceedance properties") {
    oracle::Gen gen(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 100 + static_cast<std::size_t>(gen.uniform(0, 900));
        std::vector<double> s(n);
        // Coarse rounding produces ties at the threshold.
        for (auto& v : s) v = std::round(gen.normal(0, 3));
        const auto p = from_samples(s);
        const double t = std::round(gen.uniform(-4, 4));
        const double equal = static_cast<double>(std::count(s.begin(), s.end(), t)) / static_cast<double>(n);
        const double above = prob_exceeds(p, t, Direction::Above);
        const double below = prob_exceeds(p, t, Direction::Below);
        CHECK(above * n + below * n + equal * n == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));

        const auto inner = interval(p, 0.5);
        const auto outer = interval(p, 0.95);
        CHECK(inner.lower <= inner.upper);
        CHECK(outer.lower <= inner.lower);
        CHECK(inner.upper <= outer.upper);
    }
}

TEST_CASE("averaging") {
    const auto a = normal_samples(0, 1, 100000, 8);
    const auto self = average_predictions({a, a});
    CHECK(oracle::ks_two_sample(self.samples, a.samples) < 0.02);
    CHECK(self.provenance.model_id == "average");

    const auto b = normal_samples(4, 1, 100000, 9);
    const auto mix = interval(average_predictions({a, b}), 0.95);
    CHECK(mix.width() > 3.92);
    CHECK(mix.lower < -1.5);
    CHECK(mix.upper > 5.5);

    auto shifted = b;
    shifted.x = 1.0;
    CHECK_THROWS_AS(average_predictions({a, shifted}), DomainError);
    CHECK_THROWS_AS(average_predictions({}), DomainError);

    const auto weighted = average_predictions({a, b}, std::vector<double>{0.25, 0.75});
    const auto n_b = std::count(weighted.sources.begin(), weighted.sources.end(), 1u);
    CHECK(static_cast<double>(n_b) / static_cast<double>(weighted.samples.size()) == doctest::Approx(0.75).epsilon(1e-3));
    CHECK_THROWS_AS(average_predictions({a, b}, std::vector<double>{0.5, 0.6}), DomainError);
    CHECK_THROWS_AS(average_predictions({a, b}, std::vector<double>{1.5, -0.5}), DomainError);
}

TEST_CASE("width curves") {
    std::vector<PredictiveDistribution> grid;
    for (int g = 0; g < 3; ++g) {
        auto p = normal_samples(0, 1.0 + g, 5000, 10 + g);
        p.x = g;
        grid.push_back(p);
    }
    const auto table = pi_width_curve({grid, grid}, 0.95);
    REQUIRE(table.widths.size() == 2);
    CHECK(table.widths[0] == table.widths[1]);
    for (std::size_t g = 0; g < 3; ++g) CHECK(table.averaged[g] == doctest::Approx(table.widths[0][g]).epsilon(0.05));

    auto other = grid;
    other.pop_back();
    CHECK_THROWS_AS(pi_width_curve({grid, other}, 0.95), DomainError);
}

TEST_CASE("summary") {
    std::vector<double> v(101);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i + 1);
    const auto s = summarize(from_samples(v), 0.5);
    CHECK(s.mean == 51.0);
    CHECK(s.median == 51.0);
    CHECK(s.sd == doctest::Approx(std::sqrt(101.0 * 102.0 / 12.0)));
    CHECK(s.pi.lower == 26.0);
    CHECK(s.pi.upper == 76.0);
}
