#include "ppm/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ppm/error.hpp"

namespace ppm {

namespace {

bool same_x(double a, double b) { return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(a)); }

// k evenly spaced indices out of n (k <= n), preserving order.
std::vector<std::size_t> thin_indices(std::size_t n, std::size_t k) {
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = i * n / k;
    return out;
}

}  // namespace

PredictiveDistribution posterior_predictive(const ModelSpec& model, const PosteriorDraws& draws,
                                            double x, std::size_t per_draw, RandomSource& rng) {
    if (draws.n_draws() == 0) throw DomainError("posterior draws are empty");
    if (per_draw == 0) throw DomainError("per_draw must be at least 1");
    if (draws.n_params() != model.parameter_count())
        throw DomainError("draws have " + std::to_string(draws.n_params()) +
                          " parameters, model expects " + std::to_string(model.parameter_count()));
    PredictiveDistribution out;
    out.x = x;
    out.provenance = {model.id, draws.n_draws(), per_draw, model.truncation.has_value()};
    out.samples.reserve(draws.n_draws() * per_draw);
    const std::span<const double> xs(&x, 1);
    for (std::size_t i = 0; i < draws.n_draws(); ++i) {
        const auto g = outcome_distribution(model, draws.row(i), xs);
        for (std::size_t k = 0; k < per_draw; ++k) out.samples.push_back(sample_one(g, rng));
    }
    return out;
}

PredictiveDistribution plug_in_predictive(const ModelSpec& model, std::span<const double> theta,
                                          double x, std::size_t n, RandomSource& rng) {
    if (n == 0) throw DomainError("plug-in predictive needs n >= 1");
    if (theta.size() != model.parameter_count())
        throw DomainError("plug-in estimate has the wrong length");
    PredictiveDistribution out;
    out.x = x;
    out.provenance = {model.id, 1, n, model.truncation.has_value()};
    const auto g = outcome_distribution(model, theta, std::span<const double>(&x, 1));
    out.samples = sample(g, rng, n);
    return out;
}

double empirical_quantile(std::vector<double> v, double p) {
    if (v.empty()) throw DomainError("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
    const double h = (static_cast<double>(v.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
    const double a = v[lo];
    if (hi == lo) return a;
    const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
    return a + (h - static_cast<double>(lo)) * (b - a);
}

PredictionInterval interval(const PredictiveDistribution& pred, double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("interval level must lie in (0, 1)");
    if (pred.samples.size() < 100)
        throw PrecisionError("at least 100 samples are needed for an interval, got " +
                             std::to_string(pred.samples.size()));
    const double tail = 0.5 * (1.0 - level);
    return {level, empirical_quantile(pred.samples, tail), empirical_quantile(pred.samples, 1.0 - tail)};
}

double prob_exceeds(const PredictiveDistribution& pred, double threshold, Direction direction) {
    if (pred.samples.empty()) throw DomainError("exceedance of an empty sample");
    std::size_t count = 0;
    for (double v : pred.samples)
        if (direction == Direction::Above ? v > threshold : v < threshold) ++count;
    return static_cast<double>(count) / static_cast<double>(pred.samples.size());
}

PredictiveDistribution average_predictions(const std::vector<PredictiveDistribution>& preds,
                                           const std::optional<std::vector<double>>& weights) {
    if (preds.empty()) throw DomainError("nothing to average");
    for (const auto& p : preds) {
        if (!same_x(p.x, preds.front().x))
            throw DomainError("predictions to average must share the query x");
        if (p.samples.empty()) throw DomainError("cannot average an empty predictive distribution");
    }

    std::vector<std::size_t> counts(preds.size());
    if (!weights) {
        std::size_t common = preds.front().samples.size();
        for (const auto& p : preds) common = std::min(common, p.samples.size());
        std::fill(counts.begin(), counts.end(), common);
    } else {
        const auto& w = *weights;
        if (w.size() != preds.size()) throw DomainError("one weight per prediction is required");
        double sum = 0.0;
        for (double v : w) {
            if (!(v >= 0.0)) throw DomainError("weights must be non-negative");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-9) throw DomainError("weights must sum to 1");
        double total = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < w.size(); ++m)
            if (w[m] > 0.0)
                total = std::min(total, std::floor(static_cast<double>(preds[m].samples.size()) / w[m]));
        const auto n_total = static_cast<std::size_t>(total);
        std::size_t assigned = 0;
        std::vector<std::pair<double, std::size_t>> remainders;
        for (std::size_t m = 0; m < w.size(); ++m) {
            const double exact = w[m] * static_cast<double>(n_total);
            counts[m] = static_cast<std::size_t>(std::floor(exact));
            assigned += counts[m];
            remainders.emplace_back(-(exact - std::floor(exact)), m);
        }
        std::stable_sort(remainders.begin(), remainders.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t k = 0; assigned < n_total && k < remainders.size(); ++k, ++assigned)
            ++counts[remainders[k].second];
    }

    PredictiveDistribution out;
    out.x = preds.front().x;
    out.provenance.model_id = "average";
    out.provenance.per_draw = 1;
    for (std::size_t m = 0; m < preds.size(); ++m) {
        const auto& p = preds[m];
        out.provenance.n_draws += p.provenance.n_draws;
        out.provenance.truncated = out.provenance.truncated || p.provenance.truncated;
        out.source_ids.push_back(p.provenance.model_id);
        for (auto i : thin_indices(p.samples.size(), counts[m])) {
            out.samples.push_back(p.samples[i]);
            out.sources.push_back(m);
        }
    }
    return out;
}

WidthTable pi_width_curve(const std::vector<std::vector<PredictiveDistribution>>& models_preds,
                          double level) {
    if (models_preds.empty()) throw DomainError("no models supplied");
    const auto& ref = models_preds.front();
    WidthTable table;
    for (const auto& p : ref) table.x.push_back(p.x);
    for (const auto& preds : models_preds) {
        if (preds.size() != ref.size()) throw DomainError("models do not share a common x grid");
        std::vector<double> w;
        for (std::size_t g = 0; g < preds.size(); ++g) {
            if (!same_x(preds[g].x, table.x[g])) throw DomainError("models do not share a common x grid");
            w.push_back(interval(preds[g], level).width());
        }
        table.model_ids.push_back(preds.empty() ? std::string{} : preds.front().provenance.model_id);
        table.widths.push_back(std::move(w));
    }
    for (std::size_t g = 0; g < table.x.size(); ++g) {
        std::vector<PredictiveDistribution> at;
        for (const auto& preds : models_preds) at.push_back(preds[g]);
        table.averaged.push_back(interval(average_predictions(at), level).width());
    }
    return table;
}

PredictiveSummary summarize(const PredictiveDistribution& pred, double level) {
    const auto pi = interval(pred, level);
    const double n = static_cast<double>(pred.samples.size());
    const double mean = std::accumulate(pred.samples.begin(), pred.samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : pred.samples) ss += (v - mean) * (v - mean);
    return {pred.x, mean, empirical_quantile(pred.samples, 0.5), std::sqrt(ss / (n - 1.0)), pi};
}

}  // namespace ppm
