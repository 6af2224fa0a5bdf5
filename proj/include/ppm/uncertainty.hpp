#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ppm/dataset.hpp"
#include "ppm/inference.hpp"
#include "ppm/model.hpp"
#include "ppm/prediction.hpp"
#include "ppm/random.hpp"

namespace ppm {

/// A measurement and its standard error (0 means exactly known).
struct MeasuredValue {
    double value = 0.0;
    double standard_error = 0.0;
};

/// m copies of `data` with every measured cell replaced by an independent
/// Normal(value, se) draw.  Cells with se == 0 pass through unchanged.
std::vector<Dataset> generate_datasets(const Dataset& data, std::size_t m, RandomSource& rng);

/// Predictive distribution at an uncertain input: n_x input draws from
/// Normal(value, se), each paired with one posterior draw (1:1 when the counts
/// match, otherwise drawn with replacement) and one outcome draw.
PredictiveDistribution propagate_test_error(const ModelSpec& model, const PosteriorDraws& draws,
                                            const MeasuredValue& x, std::size_t n_x,
                                            RandomSource& rng);

/// Equal-weight pool of the posterior predictives of several fits.
PredictiveDistribution pool_ensemble_predictions(const std::vector<PosteriorDraws>& fits,
                                                 const ModelSpec& model, double x,
                                                 RandomSource& rng);

struct ClassPrediction {
    /// Predicted probability per posterior draw.
    std::vector<double> p_draws;
    /// P(y = 1), the mean of p_draws.
    double y_predictive;
};

ClassPrediction classify_predictive(const ModelSpec& model, const PosteriorDraws& draws,
                                    std::span<const double> x);

/// Outcome (aleatoric) versus parameter (epistemic) uncertainty of a binary
/// prediction.  aleatoric + epistemic == mu_bar (1 - mu_bar).
struct ClassificationUncertainty {
    double mu_bar;
    /// Sample standard deviation of the probability draws (divisor T - 1).
    double sigma_mu;
    /// mean of p (1 - p).
    double aleatoric;
    /// mean of (p - mu_bar)^2.
    double epistemic;
};

ClassificationUncertainty decompose_uncertainty(std::span<const double> p_draws);

struct BoundaryBandRow {
    double x1;
    double lower;
    double median;
    double upper;
    /// Draws that contributed (those with a non-zero x2 coefficient).
    std::size_t used;

    double width() const noexcept { return upper - lower; }
};

/// Central `level` interval of the x2 location of the p = 0.5 boundary at
/// each x1, for a two-feature linear classifier.
std::vector<BoundaryBandRow> decision_boundary_band(const PosteriorDraws& draws,
                                                   const ModelSpec& model,
                                                   std::span<const double> x1_grid, double level);

struct MatchedPair {
    std::array<double, 2> a;
    std::array<double, 2> b;
    ClassPrediction pred_a;
    ClassPrediction pred_b;
};

/// Two query points with the same mean predicted probability `target_mu`,
/// the second having `sigma_ratio` times the spread of the first.  Point a is
/// the least uncertain point on the iso-probability contour for x1 in
/// [x1_lo, x1_hi]; point b lies further along the same contour.
MatchedPair find_matched_pair(const ModelSpec& model, const PosteriorDraws& draws,
                              double target_mu, double sigma_ratio, double x1_lo, double x1_hi);

}  // namespace ppm
