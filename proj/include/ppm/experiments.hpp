#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ppm/dataset.hpp"
#include "ppm/inference.hpp"
#include "ppm/model.hpp"
#include "ppm/prediction.hpp"
#include "ppm/uncertainty.hpp"

// The worked demonstrations on the running example.  Each returns plain
// numbers so the report writer and the acceptance checks share one code path.
namespace ppm::experiments {

/// Regression model with the default priors, except that rate parameters
/// (theta1 of Exp2, Exp3 and TrueModel, both Michaelis-Menten constants) are
/// restricted to be positive.
ModelSpec standard_model(MeanForm form, VarianceForm variance = VarianceForm::Constant);

/// 4 chains, 4000 warmup, 1000 retained draws thinned by 4.
FitConfig standard_fit_config(std::uint64_t seed, unsigned threads);

/// n+1 evenly spaced points on [lo, hi].
std::vector<double> grid(double lo, double hi, std::size_t n);

struct Settings {
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

// Two compounds with predicted outcome distributions and a safety threshold.
struct ThresholdResult {
    double threshold;
    double p_a;
    double p_b;
    PredictiveDistribution a;
    PredictiveDistribution b;
};
ThresholdResult threshold_compounds(const Settings& s);

struct MeanFunctionResult {
    std::vector<ModelSpec> models;
    std::vector<Diagnostics> diagnostics;
    /// summaries[m][g]; the last entry is the averaged model.
    std::vector<std::vector<PredictiveSummary>> summaries;
    WidthTable widths;
};
/// Quadratic, Exp2 and Exp3 fitted to `data` and averaged on [0, 2].
MeanFunctionResult mean_function_averaging(const Dataset& data, const Settings& s);

struct ParameterResult {
    Dataset subsample;
    Diagnostics diagnostics;
    std::vector<double> theta_hat;
    std::vector<double> x;
    std::vector<PredictionInterval> bayes;
    std::vector<PredictionInterval> plug_in;
    double median_width_ratio;
    bool bayes_wider_everywhere;
    double tail_x;
    double tail_threshold;
    double p_tail_bayes;
    double p_tail_plug_in;
};
/// Quadratic model on every eighth point, Bayesian versus plug-in.
ParameterResult parameter_uncertainty(const Dataset& data, const Settings& s);

struct MeasurementErrorResult {
    Dataset data;
    MeasuredValue test_x;
    Diagnostics diagnostics;
    PredictiveDistribution baseline;
    PredictiveDistribution test_error;
    std::vector<Dataset> generated;
    std::vector<PredictiveDistribution> per_dataset;
    PredictiveDistribution pooled;
    double baseline_sd;
    double test_error_sd;
    double pooled_sd;
};
/// Exp3 model, test input 0.15 +/- 0.06 and five generated training sets.
MeasurementErrorResult measurement_error(const Dataset& data, const Settings& s);

struct TruncationResult {
    double x;
    Diagnostics diagnostics;
    PredictiveDistribution untruncated;
    PredictiveDistribution truncated;
    double negative_untruncated;
    double negative_truncated;
};
/// Exp2 prediction at x = 0.05 with and without truncation at zero.
TruncationResult truncation(const Dataset& data, const Settings& s);

struct LinkCurve {
    std::vector<double> u;
    std::vector<LinkKind> links;
    /// p[l][i]
    std::vector<std::vector<double>> p;
};
LinkCurve link_curves();

struct VarianceResult {
    Dataset data;
    std::vector<ModelSpec> models;
    std::vector<Diagnostics> diagnostics;
    std::vector<double> x;
    /// summaries[m][g]
    std::vector<std::vector<PredictiveSummary>> summaries;
    /// Fraction of training points inside each model's 95% interval.
    std::vector<double> coverage;
};
/// Constant versus softplus(sigma0 + sigma1 mu) scale on data whose spread
/// grows with the mean.
VarianceResult variance_function(const Settings& s);

struct SeedEnsembleResult {
    std::vector<std::uint64_t> seeds;
    std::vector<PredictiveSummary> members;
    PredictiveSummary pooled;
};
/// TrueModel refitted under five sampler seeds, pooled at x = 0.5.
SeedEnsembleResult seed_ensemble(const Dataset& data, const Settings& s);

struct ClassificationPoint {
    std::array<double, 2> x;
    double y;
    ClassificationUncertainty u;
};
struct ClassificationResult {
    Dataset data;
    ModelSpec model;
    Diagnostics diagnostics;
    std::vector<ClassificationPoint> points;
    std::vector<BoundaryBandRow> band;
    MatchedPair pair;
    ClassificationUncertainty pair_a;
    ClassificationUncertainty pair_b;
    double epistemic_ratio;
    double center_width;
    double edge_width_lo;
    double edge_width_hi;
};
/// Two-feature logistic classifier: per-point decomposition, boundary band,
/// and a matched pair with the same mean but twice the spread.
ClassificationResult classification(const Settings& s);

/// Fraction of held-out points inside the fitted model's central interval.
struct CalibrationResult {
    std::size_t n_test;
    double level;
    double coverage;
    Diagnostics diagnostics;
};
CalibrationResult calibration(const Dataset& train, std::size_t n_test, double level,
                              const Settings& s);

}  // namespace ppm::experiments
