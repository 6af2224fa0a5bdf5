#include "ppm/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "ppm/error.hpp"

namespace ppm {

std::vector<Dataset> generate_datasets(const Dataset& data, std::size_t m, RandomSource& rng) {
    if (m == 0) throw DomainError("generate_datasets needs m >= 1");
    data.validate();
    std::vector<Dataset> out;
    out.reserve(m);
    const bool has_x = !data.x_se.empty();
    const bool has_y = !data.y_se.empty();
    for (std::size_t k = 0; k < m; ++k) {
        Dataset d = data;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (has_x && data.x_se[i] > 0.0) d.x[i] = data.x[i] + data.x_se[i] * rng.normal();
            if (has_y && data.y_se[i] > 0.0) d.y[i] = data.y[i] + data.y_se[i] * rng.normal();
        }
        d.provenance = data.provenance + " | generated dataset " + std::to_string(k + 1);
        out.push_back(std::move(d));
    }
    return out;
}

PredictiveDistribution propagate_test_error(const ModelSpec& model, const PosteriorDraws& draws,
                                            const MeasuredValue& x, std::size_t n_x,
                                            RandomSource& rng) {
    if (n_x == 0) throw DomainError("propagate_test_error needs n_x >= 1");
    if (!(x.standard_error >= 0.0)) throw DomainError("standard error must be non-negative");
    if (draws.n_draws() == 0) throw DomainError("posterior draws are empty");
    if (draws.n_params() != model.parameter_count())
        throw DomainError("draws do not match the model's parameter count");

    const bool paired = n_x == draws.n_draws();
    PredictiveDistribution out;
    out.x = x.value;
    out.provenance = {model.id, draws.n_draws(), 1, model.truncation.has_value()};
    out.samples.reserve(n_x);
    for (std::size_t i = 0; i < n_x; ++i) {
        const double xi = x.standard_error > 0.0 ? x.value + x.standard_error * rng.normal() : x.value;
        const std::size_t d = paired ? i : rng.index(draws.n_draws());
        const auto g = outcome_distribution(model, draws.row(d), std::span<const double>(&xi, 1));
        out.samples.push_back(sample_one(g, rng));
    }
    return out;
}

PredictiveDistribution pool_ensemble_predictions(const std::vector<PosteriorDraws>& fits,
                                                 const ModelSpec& model, double x,
                                                 RandomSource& rng) {
    if (fits.empty()) throw DomainError("pool_ensemble_predictions needs at least one fit");
    std::vector<PredictiveDistribution> preds;
    preds.reserve(fits.size());
    for (const auto& f : fits) preds.push_back(posterior_predictive(model, f, x, 1, rng));
    if (preds.size() == 1) return preds.front();
    auto pooled = average_predictions(preds);
    pooled.provenance.model_id = model.id;
    return pooled;
}

ClassPrediction classify_predictive(const ModelSpec& model, const PosteriorDraws& draws,
                                    std::span<const double> x) {
    if (!model.is_classification()) throw DomainError("classify_predictive needs a Bernoulli model");
    if (x.size() != model.mean.n_features)
        throw DomainError("query has " + std::to_string(x.size()) + " features, model expects " +
                          std::to_string(model.mean.n_features));
    if (draws.n_draws() == 0) throw DomainError("posterior draws are empty");
    if (draws.n_params() != model.parameter_count())
        throw DomainError("draws do not match the model's parameter count");
    ClassPrediction out;
    out.p_draws.reserve(draws.n_draws());
    for (std::size_t i = 0; i < draws.n_draws(); ++i)
        out.p_draws.push_back(apply_link(model.mean_link, eval_mean(model.mean, draws.row(i), x)));
    out.y_predictive = std::accumulate(out.p_draws.begin(), out.p_draws.end(), 0.0) /
                       static_cast<double>(out.p_draws.size());
    return out;
}

ClassificationUncertainty decompose_uncertainty(std::span<const double> p_draws) {
    if (p_draws.size() < 2) throw DomainError("decomposition needs at least two draws");
    for (double p : p_draws)
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability draws must lie in [0, 1]");
    const double t = static_cast<double>(p_draws.size());
    const double mu_bar = std::accumulate(p_draws.begin(), p_draws.end(), 0.0) / t;
    double aleatoric = 0.0, ss = 0.0;
    for (double p : p_draws) {
        aleatoric += p * (1.0 - p);
        ss += (p - mu_bar) * (p - mu_bar);
    }
    return {mu_bar, std::sqrt(ss / (t - 1.0)), aleatoric / t, ss / t};
}

namespace {

void require_two_feature_classifier(const ModelSpec& model) {
    if (!model.is_classification() || model.mean.form != MeanForm::Linear ||
        model.mean.n_features != 2)
        throw DomainError("a two-feature linear classifier is required");
}

double mean_probability(const ModelSpec& model, const PosteriorDraws& draws, double x1, double x2) {
    double s = 0.0;
    for (std::size_t i = 0; i < draws.n_draws(); ++i) {
        const auto th = draws.row(i);
        s += apply_link(model.mean_link, th[0] + th[1] * x1 + th[2] * x2);
    }
    return s / static_cast<double>(draws.n_draws());
}

// x2 on the iso-probability contour at x1, if the bracket contains it.
std::optional<double> contour_x2(const ModelSpec& model, const PosteriorDraws& draws, double x1,
                                 double target) {
    constexpr double kReach = 200.0;
    double lo = -kReach, hi = kReach;
    const double f_lo = mean_probability(model, draws, x1, lo) - target;
    const double f_hi = mean_probability(model, draws, x1, hi) - target;
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
    const bool increasing = f_hi > 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f = mean_probability(model, draws, x1, mid) - target;
        if (f == 0.0) return mid;
        if ((f > 0.0) == increasing)
            hi = mid;
        else
            lo = mid;
    }
    // Keep whichever end is closer to the target.
    const double e_lo = std::fabs(mean_probability(model, draws, x1, lo) - target);
    const double e_hi = std::fabs(mean_probability(model, draws, x1, hi) - target);
    return e_lo <= e_hi ? lo : hi;
}

}  // namespace

std::vector<BoundaryBandRow> decision_boundary_band(const PosteriorDraws& draws,
                                                   const ModelSpec& model,
                                                   std::span<const double> x1_grid, double level) {
    require_two_feature_classifier(model);
    if (!(level > 0.0 && level < 1.0)) throw DomainError("band level must lie in (0, 1)");
    if (draws.n_params() != 3) throw DomainError("draws do not match a two-feature classifier");
    const double midpoint = link_midpoint(model.mean_link);

    std::size_t usable = 0;
    for (std::size_t i = 0; i < draws.n_draws(); ++i)
        if (draws.value(i, 2) != 0.0) ++usable;
    if (2 * usable < draws.n_draws())
        throw DomainError("degenerate boundary: more than half of the draws have a zero x2 coefficient");

    std::vector<BoundaryBandRow> out;
    const double tail = 0.5 * (1.0 - level);
    for (double x1 : x1_grid) {
        std::vector<double> x2;
        x2.reserve(usable);
        for (std::size_t i = 0; i < draws.n_draws(); ++i) {
            const auto th = draws.row(i);
            if (th[2] == 0.0) continue;
            x2.push_back((midpoint - th[0] - th[1] * x1) / th[2]);
        }
        out.push_back({x1, empirical_quantile(x2, tail), empirical_quantile(x2, 0.5),
                       empirical_quantile(x2, 1.0 - tail), x2.size()});
    }
    return out;
}

MatchedPair find_matched_pair(const ModelSpec& model, const PosteriorDraws& draws,
                              double target_mu, double sigma_ratio, double x1_lo, double x1_hi) {
    require_two_feature_classifier(model);
    if (!(target_mu > 0.0 && target_mu < 1.0)) throw DomainError("target probability must lie in (0, 1)");
    if (!(sigma_ratio > 1.0)) throw DomainError("sigma ratio must exceed 1");
    if (!(x1_lo < x1_hi)) throw DomainError("x1 search range is empty");

    auto spread_at = [&](double x1) -> std::optional<std::pair<double, double>> {
        const auto x2 = contour_x2(model, draws, x1, target_mu);
        if (!x2) return std::nullopt;
        const double q[] = {x1, *x2};
        const auto pred = classify_predictive(model, draws, q);
        return std::pair{*x2, decompose_uncertainty(pred.p_draws).sigma_mu};
    };

    constexpr int kGrid = 400;
    std::vector<double> grid;
    std::vector<std::optional<std::pair<double, double>>> spread;
    for (int g = 0; g <= kGrid; ++g) {
        grid.push_back(x1_lo + (x1_hi - x1_lo) * g / kGrid);
        spread.push_back(spread_at(grid.back()));
    }
    std::ptrdiff_t best = -1;
    for (std::size_t g = 0; g < grid.size(); ++g)
        if (spread[g] && (best < 0 || spread[g]->second < spread[static_cast<std::size_t>(best)]->second))
            best = static_cast<std::ptrdiff_t>(g);
    if (best < 0) throw DomainError("no iso-probability contour inside the search range");
    const auto ib = static_cast<std::size_t>(best);
    const double x1_a = grid[ib];
    const double sigma_a = spread[ib]->second;
    const double goal = sigma_ratio * sigma_a;

    // Walk outward in both directions until the spread crosses the goal.
    std::optional<std::pair<double, double>> bracket;
    for (double step : {0.05, -0.05}) {
        double prev = x1_a;
        for (int k = 1; k <= 4000 && !bracket; ++k) {
            const double x1 = x1_a + step * k;
            const auto s = spread_at(x1);
            if (!s) break;
            if (s->second >= goal) bracket = std::pair{prev, x1};
            prev = x1;
        }
        if (bracket) break;
    }
    if (!bracket) throw DomainError("spread never reaches the requested ratio along the contour");
    double lo = bracket->first, hi = bracket->second;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        const auto s = spread_at(mid);
        if (!s) break;
        if (s->second < goal)
            lo = mid;
        else
            hi = mid;
        if (std::fabs(hi - lo) < 1e-12) break;
    }
    const double x1_b = 0.5 * (lo + hi);
    MatchedPair pair;
    pair.a = {x1_a, spread[ib]->first};
    pair.b = {x1_b, *contour_x2(model, draws, x1_b, target_mu)};
    pair.pred_a = classify_predictive(model, draws, pair.a);
    pair.pred_b = classify_predictive(model, draws, pair.b);
    return pair;
}

}  // namespace ppm
