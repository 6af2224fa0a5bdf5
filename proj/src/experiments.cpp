#include "ppm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppm/error.hpp"
#include "ppm/random.hpp"
#include "ppm/simulate.hpp"
#include "ppm/special.hpp"

namespace ppm::experiments {

namespace {

// Stream indices for derive_seed, one per use.
enum Stream : std::uint64_t {
    kThreshold = 1,
    kMeanFit = 10,
    kMeanPredict = 20,
    kParamFit = 30,
    kParamPredict = 31,
    kMeasureSe = 40,
    kMeasureFit = 41,
    kMeasurePredict = 42,
    kMeasureGenerate = 43,
    kMeasureEnsemble = 50,
    kTruncFit = 60,
    kTruncPredict = 61,
    kVarData = 70,
    kVarFit = 71,
    kVarPredict = 73,
    kSeedFit = 80,
    kSeedPredict = 90,
    kClassData = 100,
    kClassFit = 101,
    kCalFit = 110,
    kCalData = 111,
    kCalPredict = 112,
};

double sd_of(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double a : v) ss += (a - m) * (a - m);
    return std::sqrt(ss / (n - 1.0));
}

double fraction_below(const std::vector<double>& v, double t) {
    const auto k = std::count_if(v.begin(), v.end(), [t](double a) { return a < t; });
    return static_cast<double>(k) / static_cast<double>(v.size());
}

const Diagnostics& diag_of(const PosteriorDraws& d) {
    if (!d.diagnostics()) throw Error("fit returned no diagnostics");
    return *d.diagnostics();
}

}  // namespace

ModelSpec standard_model(MeanForm form, VarianceForm variance) {
    ModelSpec m = regression_model(form, variance);
    const auto positive = DistributionSpec::truncated_normal(0.0, 5.0, 0.0);
    switch (form) {
        case MeanForm::Exp2:
        case MeanForm::Exp3:
        case MeanForm::TrueModel: m.priors[0] = positive; break;
        case MeanForm::MichaelisMenten:
            m.priors[0] = positive;
            m.priors[1] = positive;
            break;
        default: break;
    }
    m.validate();
    return m;
}

FitConfig standard_fit_config(std::uint64_t seed, unsigned threads) {
    FitConfig c;
    c.chains = 4;
    c.warmup = 4000;
    c.samples = 1000;
    c.thin = 4;
    c.seed = seed;
    c.threads = threads;
    return c;
}

std::vector<double> grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        g[i] = i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    return g;
}

ThresholdResult threshold_compounds(const Settings& s) {
    // Plug-in linear model with a zero slope: theta = (mean, 0, sd).
    const ModelSpec m = regression_model(MeanForm::Linear, VarianceForm::Constant, "compound");
    RandomSource rng(derive_seed(s.seed, kThreshold));
    const double a[] = {5.5, 0.0, 2.3};
    const double b[] = {6.5, 0.0, 0.73};
    ThresholdResult r;
    r.threshold = 8.0;
    r.a = plug_in_predictive(m, a, 0.0, 100000, rng);
    r.a.provenance.model_id = "compound_a";
    r.b = plug_in_predictive(m, b, 0.0, 100000, rng);
    r.b.provenance.model_id = "compound_b";
    r.p_a = prob_exceeds(r.a, r.threshold, Direction::Above);
    r.p_b = prob_exceeds(r.b, r.threshold, Direction::Above);
    return r;
}

MeanFunctionResult mean_function_averaging(const Dataset& data, const Settings& s) {
    MeanFunctionResult r;
    r.models = {standard_model(MeanForm::Quadratic), standard_model(MeanForm::Exp2),
                standard_model(MeanForm::Exp3)};
    const auto xs = grid(0.0, 2.0, 40);
    std::vector<std::vector<PredictiveDistribution>> preds;
    for (std::size_t m = 0; m < r.models.size(); ++m) {
        const auto draws = fit(r.models[m], data, standard_fit_config(derive_seed(s.seed, kMeanFit + m), s.threads));
        r.diagnostics.push_back(diag_of(draws));
        RandomSource rng(derive_seed(s.seed, kMeanPredict + m));
        std::vector<PredictiveDistribution> row;
        for (double x : xs) row.push_back(posterior_predictive(r.models[m], draws, x, 5, rng));
        preds.push_back(std::move(row));
    }
    r.widths = pi_width_curve(preds, 0.95);
    for (const auto& row : preds) {
        std::vector<PredictiveSummary> sums;
        for (const auto& p : row) sums.push_back(summarize(p, 0.95));
        r.summaries.push_back(std::move(sums));
    }
    std::vector<PredictiveSummary> averaged;
    for (std::size_t g = 0; g < xs.size(); ++g) {
        std::vector<PredictiveDistribution> at;
        for (const auto& row : preds) at.push_back(row[g]);
        averaged.push_back(summarize(average_predictions(at), 0.95));
    }
    r.summaries.push_back(std::move(averaged));
    return r;
}

ParameterResult parameter_uncertainty(const Dataset& data, const Settings& s) {
    ParameterResult r;
    r.subsample = subsample_every_kth(data, 8);
    const ModelSpec m = standard_model(MeanForm::Quadratic);
    const auto draws = fit(m, r.subsample, standard_fit_config(derive_seed(s.seed, kParamFit), s.threads));
    r.diagnostics = diag_of(draws);
    r.theta_hat = plug_in_fit(m, r.subsample);

    RandomSource rng(derive_seed(s.seed, kParamPredict));
    r.x = grid(0.0, 1.0, 20);
    std::vector<double> ratios;
    r.bayes_wider_everywhere = true;
    for (double x : r.x) {
        const auto bayes = posterior_predictive(m, draws, x, 25, rng);
        const auto plug = plug_in_predictive(m, r.theta_hat, x, bayes.samples.size(), rng);
        r.bayes.push_back(interval(bayes, 0.95));
        r.plug_in.push_back(interval(plug, 0.95));
        ratios.push_back(r.bayes.back().width() / r.plug_in.back().width());
        if (!(r.bayes.back().width() > r.plug_in.back().width())) r.bayes_wider_everywhere = false;
    }
    r.median_width_ratio = empirical_quantile(ratios, 0.5);

    r.tail_x = 0.5;
    r.tail_threshold = 1.2;
    const auto bayes = posterior_predictive(m, draws, r.tail_x, 25, rng);
    const auto plug = plug_in_predictive(m, r.theta_hat, r.tail_x, bayes.samples.size(), rng);
    r.p_tail_bayes = prob_exceeds(bayes, r.tail_threshold, Direction::Above);
    r.p_tail_plug_in = prob_exceeds(plug, r.tail_threshold, Direction::Above);
    return r;
}

MeasurementErrorResult measurement_error(const Dataset& data, const Settings& s) {
    MeasurementErrorResult r;
    r.data = with_standard_errors(data, 0.01, 0.06, 0.05, derive_seed(s.seed, kMeasureSe));
    r.test_x = {0.15, 0.06};
    const ModelSpec m = standard_model(MeanForm::Exp3);

    const auto draws = fit(m, data, standard_fit_config(derive_seed(s.seed, kMeasureFit), s.threads));
    r.diagnostics = diag_of(draws);
    RandomSource rng(derive_seed(s.seed, kMeasurePredict));
    r.baseline = posterior_predictive(m, draws, r.test_x.value, 1, rng);
    r.test_error = propagate_test_error(m, draws, r.test_x, 1000, rng);

    RandomSource gen(derive_seed(s.seed, kMeasureGenerate));
    r.generated = generate_datasets(r.data, 5, gen);
    for (std::size_t k = 0; k < r.generated.size(); ++k) {
        const auto d = fit(m, r.generated[k],
                           standard_fit_config(derive_seed(s.seed, kMeasureEnsemble + k), s.threads));
        r.per_dataset.push_back(posterior_predictive(m, d, r.test_x.value, 1, rng));
        r.per_dataset.back().provenance.model_id = "generated_" + std::to_string(k + 1);
    }
    r.pooled = average_predictions(r.per_dataset);
    r.baseline_sd = sd_of(r.baseline.samples);
    r.test_error_sd = sd_of(r.test_error.samples);
    r.pooled_sd = sd_of(r.pooled.samples);
    return r;
}

TruncationResult truncation(const Dataset& data, const Settings& s) {
    TruncationResult r;
    r.x = 0.05;
    ModelSpec m = standard_model(MeanForm::Exp2);
    const auto draws = fit(m, data, standard_fit_config(derive_seed(s.seed, kTruncFit), s.threads));
    r.diagnostics = diag_of(draws);
    RandomSource rng(derive_seed(s.seed, kTruncPredict));
    r.untruncated = posterior_predictive(m, draws, r.x, 25, rng);
    m.truncation = Truncation{0.0, std::numeric_limits<double>::infinity()};
    r.truncated = posterior_predictive(m, draws, r.x, 25, rng);
    r.negative_untruncated = fraction_below(r.untruncated.samples, 0.0);
    r.negative_truncated = fraction_below(r.truncated.samples, 0.0);
    return r;
}

LinkCurve link_curves() {
    LinkCurve c;
    c.u = grid(-6.0, 6.0, 120);
    c.links = {LinkKind::Logit, LinkKind::Probit, LinkKind::Cauchit, LinkKind::CLogLog};
    for (auto l : c.links) {
        std::vector<double> p;
        for (double u : c.u) p.push_back(apply_link(l, u));
        c.p.push_back(std::move(p));
    }
    return c;
}

VarianceResult variance_function(const Settings& s) {
    VarianceResult r;
    // Running-example mean with spread softplus(-3.5 + 2 mu).
    r.data = simulate_dataset(100, 3.25, 0.2, 0.0, 0);
    RandomSource noise(derive_seed(s.seed, kVarData));
    for (std::size_t i = 0; i < r.data.size(); ++i)
        r.data.y[i] += special::softplus(-3.5 + 2.0 * r.data.y[i]) * noise.normal();
    r.data.provenance = "running example with spread softplus(-3.5 + 2 mu)";

    r.models = {standard_model(MeanForm::TrueModel, VarianceForm::Constant),
                standard_model(MeanForm::TrueModel, VarianceForm::LinearInMu)};
    r.models[0].id = "constant_sigma";
    r.models[1].id = "sigma_linear_in_mu";
    r.x = grid(0.0, 1.0, 20);
    for (std::size_t m = 0; m < r.models.size(); ++m) {
        const auto draws = fit(r.models[m], r.data, standard_fit_config(derive_seed(s.seed, kVarFit + m), s.threads));
        r.diagnostics.push_back(diag_of(draws));
        RandomSource rng(derive_seed(s.seed, kVarPredict + m));
        std::vector<PredictiveSummary> sums;
        for (double x : r.x) sums.push_back(summarize(posterior_predictive(r.models[m], draws, x, 1, rng), 0.95));
        r.summaries.push_back(std::move(sums));
        std::size_t inside = 0;
        for (std::size_t i = 0; i < r.data.size(); ++i) {
            const auto pi = interval(posterior_predictive(r.models[m], draws, r.data.x[i], 1, rng), 0.95);
            if (r.data.y[i] >= pi.lower && r.data.y[i] <= pi.upper) ++inside;
        }
        r.coverage.push_back(static_cast<double>(inside) / static_cast<double>(r.data.size()));
    }
    return r;
}

SeedEnsembleResult seed_ensemble(const Dataset& data, const Settings& s) {
    SeedEnsembleResult r;
    for (std::uint64_t k = 0; k < 5; ++k) r.seeds.push_back(derive_seed(s.seed, kSeedFit + k));
    const ModelSpec m = standard_model(MeanForm::TrueModel);
    FitConfig c = standard_fit_config(0, s.threads);
    const auto fits = fit_ensemble(m, data, r.seeds, c);
    RandomSource rng(derive_seed(s.seed, kSeedPredict));
    std::vector<PredictiveDistribution> preds;
    for (const auto& f : fits) {
        preds.push_back(posterior_predictive(m, f, 0.5, 1, rng));
        r.members.push_back(summarize(preds.back(), 0.95));
    }
    r.pooled = summarize(average_predictions(preds), 0.95);
    return r;
}

ClassificationResult classification(const Settings& s) {
    ClassificationResult r;
    r.data = simulate_classification(100, {0.0, 1.5, -1.5}, derive_seed(s.seed, kClassData));
    r.model = classification_model(2, LinkKind::Logit, "logistic");
    const auto draws = fit(r.model, r.data, standard_fit_config(derive_seed(s.seed, kClassFit), s.threads));
    r.diagnostics = diag_of(draws);

    for (std::size_t i = 0; i < r.data.size(); ++i) {
        const auto f = r.data.features(i);
        const auto pred = classify_predictive(r.model, draws, f);
        r.points.push_back({{f[0], f[1]}, r.data.y[i], decompose_uncertainty(pred.p_draws)});
    }
    r.band = decision_boundary_band(draws, r.model, grid(-3.0, 3.0, 24), 0.95);
    r.edge_width_lo = r.band.front().width();
    r.edge_width_hi = r.band.back().width();
    r.center_width = r.band[r.band.size() / 2].width();

    r.pair = find_matched_pair(r.model, draws, 0.75, 2.0, -3.0, 3.0);
    r.pair_a = decompose_uncertainty(r.pair.pred_a.p_draws);
    r.pair_b = decompose_uncertainty(r.pair.pred_b.p_draws);
    r.epistemic_ratio = r.pair_b.epistemic / r.pair_a.epistemic;
    return r;
}

CalibrationResult calibration(const Dataset& train, std::size_t n_test, double level,
                              const Settings& s) {
    CalibrationResult r;
    r.n_test = n_test;
    r.level = level;
    const ModelSpec m = standard_model(MeanForm::TrueModel);
    FitConfig c;
    c.seed = derive_seed(s.seed, kCalFit);
    c.threads = s.threads;
    const auto draws = fit(m, train, c);
    r.diagnostics = diag_of(draws);
    const auto test = simulate_dataset(n_test, 3.25, 0.2, 0.1, derive_seed(s.seed, kCalData), XLayout::Random);
    RandomSource rng(derive_seed(s.seed, kCalPredict));
    std::size_t inside = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        const auto pi = interval(posterior_predictive(m, draws, test.x[i], 1, rng), level);
        if (test.y[i] >= pi.lower && test.y[i] <= pi.upper) ++inside;
    }
    r.coverage = static_cast<double>(inside) / static_cast<double>(n_test);
    return r;
}

}  // namespace ppm::experiments
