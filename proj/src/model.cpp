#include "ppm/model.hpp"

#include <cmath>

#include "ppm/error.hpp"

namespace ppm {

std::size_t ModelSpec::parameter_count() const noexcept {
    return mean.parameter_count() + (variance ? variance->parameter_count() : 0);
}

std::vector<std::string> ModelSpec::parameter_names() const {
    auto names = mean.parameter_names();
    if (variance) {
        const auto v = variance->parameter_names();
        names.insert(names.end(), v.begin(), v.end());
    }
    return names;
}

void ModelSpec::validate() const {
    mean.validate();
    switch (family) {
        case Family::Bernoulli:
            if (!is_probability_link(mean_link))
                throw DomainError("Bernoulli models need a 0-1 mean link");
            if (variance) throw DomainError("Bernoulli models take no variance function");
            if (truncation) throw DomainError("Bernoulli models cannot be truncated");
            break;
        case Family::StudentT:
            if (!(df > 0.0)) throw DomainError("StudentT models need df > 0");
            if (truncation) throw DomainError("truncation is supported for Normal outcomes only");
            [[fallthrough]];
        case Family::Normal:
            if (!variance) throw DomainError("regression models need a variance function");
            variance->validate();
            break;
        case Family::TruncatedNormal:
            throw DomainError("use a Normal family with a truncation block for truncated outcomes");
    }
    if (priors.size() != parameter_count())
        throw DomainError("model has " + std::to_string(parameter_count()) + " parameters but " +
                          std::to_string(priors.size()) + " priors");
    for (const auto& p : priors)
        if (p.family() == Family::Bernoulli) throw DomainError("Bernoulli is not a valid prior");
    if (truncation && !(truncation->lower < truncation->upper))
        throw DomainError("truncation requires lower < upper");
}

std::vector<DistributionSpec> default_priors(const MeanFunctionSpec& mean,
                                             const std::optional<VarianceFunctionSpec>& variance) {
    std::vector<DistributionSpec> priors(mean.parameter_count(), DistributionSpec::normal(0.0, 5.0));
    if (variance) {
        if (variance->form == VarianceForm::Constant)
            priors.push_back(DistributionSpec::truncated_normal(0.0, 2.0, 0.0));
        else
            priors.insert(priors.end(), variance->parameter_count(), DistributionSpec::normal(0.0, 5.0));
    }
    return priors;
}

ModelSpec regression_model(MeanForm form, VarianceForm variance, std::string id) {
    ModelSpec m;
    m.id = id.empty() ? std::string(to_string(form)) : std::move(id);
    m.mean = {form, 1};
    m.variance = VarianceFunctionSpec{
        variance, variance == VarianceForm::Constant ? LinkKind::Identity : LinkKind::Softplus};
    m.priors = default_priors(m.mean, m.variance);
    m.validate();
    return m;
}

ModelSpec classification_model(std::size_t n_features, LinkKind link, std::string id) {
    ModelSpec m;
    m.id = id.empty() ? "logistic" : std::move(id);
    m.family = Family::Bernoulli;
    m.mean = {MeanForm::Linear, n_features};
    m.mean_link = link;
    m.priors = default_priors(m.mean, std::nullopt);
    m.validate();
    return m;
}

LocationScale location_scale(const ModelSpec& model, std::span<const double> theta,
                             std::span<const double> x) {
    if (theta.size() != model.parameter_count())
        throw DomainError("parameter vector has " + std::to_string(theta.size()) +
                          " entries, model expects " + std::to_string(model.parameter_count()));
    const double mu = apply_link(model.mean_link, eval_mean(model.mean, model.mean_parameters(theta), x));
    if (!std::isfinite(mu)) throw EvaluationError("mean function is not finite");
    if (!model.variance) return {mu, 0.0};
    return {mu, eval_sigma(*model.variance, model.variance_parameters(theta), mu)};
}

DistributionSpec outcome_distribution(const ModelSpec& model, std::span<const double> theta,
                                      std::span<const double> x, bool truncate) {
    const auto ls = location_scale(model, theta, x);
    switch (model.family) {
        case Family::Bernoulli: return DistributionSpec::bernoulli(ls.mu);
        case Family::StudentT: return DistributionSpec::student_t(ls.mu, ls.sigma, model.df);
        default:
            if (truncate && model.truncation)
                return DistributionSpec::truncated_normal(ls.mu, ls.sigma, model.truncation->lower,
                                                          model.truncation->upper);
            return DistributionSpec::normal(ls.mu, ls.sigma);
    }
}

}  // namespace ppm
