#include "ppm/functions.hpp"

#include <cmath>

#include "ppm/error.hpp"
#include "ppm/special.hpp"

namespace ppm {

std::string_view to_string(MeanForm form) noexcept {
    switch (form) {
        case MeanForm::Linear: return "Linear";
        case MeanForm::Quadratic: return "Quadratic";
        case MeanForm::Exp2: return "Exp2";
        case MeanForm::Exp3: return "Exp3";
        case MeanForm::MichaelisMenten: return "MichaelisMenten";
        case MeanForm::TrueModel: return "TrueModel";
    }
    return "?";
}

MeanForm mean_form_from_string(std::string_view name) {
    for (auto f : {MeanForm::Linear, MeanForm::Quadratic, MeanForm::Exp2, MeanForm::Exp3,
                   MeanForm::MichaelisMenten, MeanForm::TrueModel})
        if (to_string(f) == name) return f;
    throw DomainError("unknown mean function form: " + std::string(name));
}

std::size_t MeanFunctionSpec::parameter_count() const noexcept {
    switch (form) {
        case MeanForm::Linear: return 1 + n_features;
        case MeanForm::Quadratic: return 3;
        case MeanForm::Exp2: return 2;
        case MeanForm::Exp3: return 3;
        case MeanForm::MichaelisMenten: return 2;
        case MeanForm::TrueModel: return 2;
    }
    return 0;
}

std::vector<std::string> MeanFunctionSpec::parameter_names() const {
    switch (form) {
        case MeanForm::Linear: {
            std::vector<std::string> names;
            for (std::size_t j = 0; j <= n_features; ++j) names.push_back("theta" + std::to_string(j));
            return names;
        }
        case MeanForm::Quadratic: return {"theta0", "theta1", "theta2"};
        case MeanForm::Exp2: return {"theta1", "theta2"};
        case MeanForm::Exp3: return {"theta1", "theta2", "theta3"};
        case MeanForm::MichaelisMenten: return {"theta1", "theta2"};
        case MeanForm::TrueModel: return {"theta1", "theta2"};
    }
    return {};
}

void MeanFunctionSpec::validate() const {
    if (n_features == 0) throw DomainError("mean function needs at least one feature");
    if (form != MeanForm::Linear && n_features != 1)
        throw DomainError(std::string(to_string(form)) + " takes a single feature");
}

double eval_mean(const MeanFunctionSpec& spec, std::span<const double> theta,
                 std::span<const double> x) {
    if (theta.size() != spec.parameter_count())
        throw DomainError(std::string(to_string(spec.form)) + " expects " +
                          std::to_string(spec.parameter_count()) + " parameters, got " +
                          std::to_string(theta.size()));
    if (x.size() != spec.n_features)
        throw DomainError("mean function expects " + std::to_string(spec.n_features) +
                          " features, got " + std::to_string(x.size()));
    switch (spec.form) {
        case MeanForm::Linear: {
            double u = theta[0];
            for (std::size_t j = 0; j < x.size(); ++j) u += theta[j + 1] * x[j];
            return u;
        }
        case MeanForm::Quadratic: return theta[0] + x[0] * (theta[1] + theta[2] * x[0]);
        case MeanForm::Exp2: return -theta[1] * std::expm1(-theta[0] * x[0]);
        case MeanForm::Exp3: return theta[2] - theta[1] * std::expm1(-theta[0] * x[0]);
        case MeanForm::MichaelisMenten: {
            const double denom = theta[1] + x[0];
            if (denom == 0.0)
                throw EvaluationError("Michaelis-Menten evaluated at its pole x = -theta2");
            return theta[0] * x[0] / denom;
        }
        case MeanForm::TrueModel:
            // (1 - e^-a) / (1 + e^-a) == tanh(a / 2)
            return theta[1] + std::tanh(0.5 * theta[0] * x[0]);
    }
    return 0.0;
}

std::string_view to_string(LinkKind link) noexcept {
    switch (link) {
        case LinkKind::Identity: return "identity";
        case LinkKind::Logit: return "logit";
        case LinkKind::Probit: return "probit";
        case LinkKind::Cauchit: return "cauchit";
        case LinkKind::CLogLog: return "cloglog";
        case LinkKind::Softplus: return "softplus";
    }
    return "?";
}

LinkKind link_from_string(std::string_view name) {
    for (auto l : {LinkKind::Identity, LinkKind::Logit, LinkKind::Probit, LinkKind::Cauchit,
                   LinkKind::CLogLog, LinkKind::Softplus})
        if (to_string(l) == name) return l;
    throw DomainError("unknown link function: " + std::string(name));
}

bool is_probability_link(LinkKind link) noexcept {
    return link == LinkKind::Logit || link == LinkKind::Probit || link == LinkKind::Cauchit ||
           link == LinkKind::CLogLog;
}

double apply_link(LinkKind link, double u) noexcept {
    switch (link) {
        case LinkKind::Identity: return u;
        case LinkKind::Logit:
            if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
            else {
                const double e = std::exp(u);
                return e / (1.0 + e);
            }
        case LinkKind::Probit: return special::normal_cdf(u);
        case LinkKind::Cauchit: return 0.5 + std::atan(u) / special::kPi;
        case LinkKind::CLogLog: return -std::expm1(-std::exp(u));
        case LinkKind::Softplus: return special::softplus(u);
    }
    return u;
}

double link_midpoint(LinkKind link) {
    switch (link) {
        case LinkKind::Logit:
        case LinkKind::Probit:
        case LinkKind::Cauchit: return 0.0;
        case LinkKind::CLogLog: return std::log(std::log(2.0));
        default: throw DomainError("link has no probability midpoint: " + std::string(to_string(link)));
    }
}

std::string_view to_string(VarianceForm form) noexcept {
    switch (form) {
        case VarianceForm::Constant: return "Constant";
        case VarianceForm::LinearInMu: return "LinearInMu";
    }
    return "?";
}

VarianceForm variance_form_from_string(std::string_view name) {
    if (name == "Constant") return VarianceForm::Constant;
    if (name == "LinearInMu") return VarianceForm::LinearInMu;
    throw DomainError("unknown variance function form: " + std::string(name));
}

std::size_t VarianceFunctionSpec::parameter_count() const noexcept {
    return form == VarianceForm::Constant ? 1 : 2;
}

std::vector<std::string> VarianceFunctionSpec::parameter_names() const {
    if (form == VarianceForm::Constant) return {"sigma"};
    return {"sigma0", "sigma1"};
}

void VarianceFunctionSpec::validate() const {
    if (form == VarianceForm::Constant && link != LinkKind::Identity)
        throw DomainError("Constant variance uses the identity link");
    if (form == VarianceForm::LinearInMu && link != LinkKind::Softplus)
        throw DomainError("LinearInMu variance uses the softplus link");
}

double eval_sigma(const VarianceFunctionSpec& spec, std::span<const double> theta_sigma,
                  double mu) {
    if (theta_sigma.size() != spec.parameter_count())
        throw DomainError("variance function expects " + std::to_string(spec.parameter_count()) +
                          " parameters, got " + std::to_string(theta_sigma.size()));
    if (spec.form == VarianceForm::Constant) {
        if (!(theta_sigma[0] > 0.0)) throw DomainError("constant scale must be positive");
        return theta_sigma[0];
    }
    const double s = apply_link(spec.link, theta_sigma[0] + theta_sigma[1] * mu);
    // softplus underflows to 0 only below about -745.
    if (!(s > 0.0)) throw DomainError("variance function produced a non-positive scale");
    return s;
}

}  // namespace ppm
