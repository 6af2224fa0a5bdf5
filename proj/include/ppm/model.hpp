#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppm/distributions.hpp"
#include "ppm/functions.hpp"

namespace ppm {

/// Outcome bounds applied when generating predictions.
struct Truncation {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();

    friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// The complete predictive model:
///
///   y     ~ G(mu, sigma)
///   mu    = l_mu(f_mu(x; theta_mu))
///   sigma = l_sigma(f_sigma(mu; theta_sigma))
///
/// with one prior per parameter.  The parameter vector is theta_mu followed
/// by theta_sigma.
struct ModelSpec {
    std::string id = "model";
    /// Normal or StudentT for regression, Bernoulli for classification.
    Family family = Family::Normal;
    /// Fixed degrees of freedom for StudentT.
    double df = 0.0;
    MeanFunctionSpec mean;
    LinkKind mean_link = LinkKind::Identity;
    /// Absent for Bernoulli.
    std::optional<VarianceFunctionSpec> variance;
    std::vector<DistributionSpec> priors;
    std::optional<Truncation> truncation;

    std::size_t mean_parameter_count() const noexcept { return mean.parameter_count(); }
    std::size_t parameter_count() const noexcept;
    std::vector<std::string> parameter_names() const;
    bool is_classification() const noexcept { return family == Family::Bernoulli; }

    std::span<const double> mean_parameters(std::span<const double> theta) const {
        return theta.first(mean_parameter_count());
    }
    std::span<const double> variance_parameters(std::span<const double> theta) const {
        return theta.subspan(mean_parameter_count());
    }

    /// Throws DomainError on any structural inconsistency.
    void validate() const;
};

/// Normal(0, 5) on mean-function and variance-function coefficients,
/// TruncatedNormal(0, 2, lower = 0) on a constant scale.
std::vector<DistributionSpec> default_priors(const MeanFunctionSpec& mean,
                                             const std::optional<VarianceFunctionSpec>& variance);

/// Normal-outcome regression model with default priors.
ModelSpec regression_model(MeanForm form, VarianceForm variance = VarianceForm::Constant,
                           std::string id = {});

/// Bernoulli classifier, linear in `n_features` inputs, with default priors.
ModelSpec classification_model(std::size_t n_features, LinkKind link = LinkKind::Logit,
                               std::string id = {});

/// Mean and scale of G at one input.  sigma is 0 for Bernoulli models.
struct LocationScale {
    double mu;
    double sigma;
};

/// Throws EvaluationError / DomainError when the parameters are outside the
/// model's support at x.
LocationScale location_scale(const ModelSpec& model, std::span<const double> theta,
                             std::span<const double> x);

/// G at one input, with the model's truncation applied when `truncate` is set.
DistributionSpec outcome_distribution(const ModelSpec& model, std::span<const double> theta,
                                      std::span<const double> x, bool truncate = true);

}  // namespace ppm
