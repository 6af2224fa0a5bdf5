#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppm/inference.hpp"
#include "ppm/model.hpp"
#include "ppm/random.hpp"

namespace ppm {

struct PredictiveProvenance {
    std::string model_id;
    std::size_t n_draws = 0;
    std::size_t per_draw = 0;
    bool truncated = false;
};

/// An empirical sample of future outcomes at one query input.
struct PredictiveDistribution {
    double x = 0.0;
    std::vector<double> samples;
    PredictiveProvenance provenance;
    /// For pooled mixtures: index into source_ids for every sample.
    std::vector<std::size_t> sources;
    std::vector<std::string> source_ids;
};

struct PredictionInterval {
    double level;
    double lower;
    double upper;

    double width() const noexcept { return upper - lower; }
};

enum class Direction { Above, Below };

/// For every retained draw, sample `per_draw` outcomes from G at x (the
/// model's truncation applied when present).
PredictiveDistribution posterior_predictive(const ModelSpec& model, const PosteriorDraws& draws,
                                            double x, std::size_t per_draw, RandomSource& rng);

/// n outcomes from G at a single parameter vector.
PredictiveDistribution plug_in_predictive(const ModelSpec& model, std::span<const double> theta,
                                          double x, std::size_t n, RandomSource& rng);

/// Empirical quantile, linear interpolation between order statistics.
double empirical_quantile(std::vector<double> sorted_or_not, double p);

/// Central (equal-tailed) interval.  Throws PrecisionError below 100 samples.
PredictionInterval interval(const PredictiveDistribution& pred, double level);

/// Fraction of samples strictly above (or below) the threshold.
double prob_exceeds(const PredictiveDistribution& pred, double threshold, Direction direction);

/// Pools component distributions into a mixture.  Equal weights by default:
/// every component is thinned to the smallest sample count.  With weights,
/// component counts are proportional to the weights.
PredictiveDistribution average_predictions(const std::vector<PredictiveDistribution>& preds,
                                           const std::optional<std::vector<double>>& weights = {});

struct WidthTable {
    std::vector<double> x;
    std::vector<std::string> model_ids;
    /// widths[m][g] for model m at grid point g.
    std::vector<std::vector<double>> widths;
    std::vector<double> averaged;
};

/// Interval widths per model and for the equal-weight average, on a shared grid.
WidthTable pi_width_curve(const std::vector<std::vector<PredictiveDistribution>>& models_preds,
                          double level);

struct PredictiveSummary {
    double x;
    double mean;
    double median;
    double sd;
    PredictionInterval pi;
};

PredictiveSummary summarize(const PredictiveDistribution& pred, double level);

}  // namespace ppm
