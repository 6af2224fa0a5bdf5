#include <doctest.h>

#include <cmath>

#include "../oracle.hpp"
#include "ppm/error.hpp"
#include "ppm/inference.hpp"

using namespace ppm;

namespace {

std::vector<std::vector<double>> iid_chains(std::size_t m, std::size_t n, std::uint64_t seed) {
    oracle::Gen gen(seed);
    std::vector<std::vector<double>> chains(m, std::vector<double>(n));
    for (auto& c : chains)
        for (auto& v : c) v = gen.normal();
    return chains;
}

}  // namespace

TEST_CASE("iid chains give R-hat near one") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto chains = iid_chains(4, 1000, seed);
        const double r = split_rhat(chains);
        CHECK(r >= 0.99);
        CHECK(r <= 1.02);
        const double ess = ess_bulk(chains);
        CHECK(ess > 3000.0);
        CHECK(ess < 5500.0);
    }
}

TEST_CASE("identical chains give R-hat near one") {
    auto chains = iid_chains(1, 1000, 3);
    chains.push_back(chains[0]);
    CHECK(split_rhat(chains) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("a shifted chain is detected") {
    auto chains = iid_chains(4, 500, 2);
    for (double& v : chains[1]) v += 100.0;
    CHECK(split_rhat(chains) > 1.1);
}

TEST_CASE("autocorrelation reduces ESS") {
    oracle::Gen gen(8);
    const double phi = 0.9;
    std::vector<std::vector<double>> chains(4, std::vector<double>(2000));
    for (auto& c : chains) {
        double v = gen.normal() / std::sqrt(1 - phi * phi);
        for (auto& out : c) {
            v = phi * v + gen.normal();
            out = v;
        }
    }
    // Theoretical ESS for AR(1) is N (1 - phi) / (1 + phi).
    const double expected = 8000.0 * (1 - phi) / (1 + phi);
    const double ess = ess_bulk(chains);
    CHECK(ess > 0.6 * expected);
    CHECK(ess < 1.5 * expected);
}

TEST_CASE("degenerate input raises diagnostics errors") {
    CHECK_THROWS_AS(split_rhat({std::vector<double>(100, 1.0), std::vector<double>(100, 1.0)}),
                    DiagnosticsError);
    CHECK_THROWS_AS(split_rhat(iid_chains(1, 100, 1)), DiagnosticsError);
    CHECK_THROWS_AS(split_rhat({{1, 2, 3}, {1, 2, 4}}), DiagnosticsError);

    const PosteriorDraws one({"a"}, {1, 2, 3, 4, 5}, {0, 0, 0, 0, 0});
    CHECK_THROWS_AS(diagnostics(one), DiagnosticsError);
    const PosteriorDraws flat({"a"}, std::vector<double>(8, 2.0), {0, 0, 0, 0, 1, 1, 1, 1});
    CHECK_THROWS_AS(diagnostics(flat), DiagnosticsError);
}

TEST_CASE("flagging threshold") {
    Diagnostics d;
    d.names = {"a", "b", "c"};
    d.rhat = {1.0, 1.011, 1.01};
    d.ess_bulk = {100, 100, 100};
    CHECK(d.flagged() == std::vector<std::string>{"b"});
    CHECK(d.max_rhat() == 1.011);
}
