#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ppm {

/// Structural forms for the mean function.
///
///   Linear           theta0 + theta1 x1 + ... + thetaD xD
///   Quadratic        theta0 + theta1 x + theta2 x^2
///   Exp2             theta2 (1 - exp(-theta1 x))
///   Exp3             theta3 + theta2 (1 - exp(-theta1 x))
///   MichaelisMenten  theta1 x / (theta2 + x)
///   TrueModel        theta2 + (1 - exp(-theta1 x)) / (1 + exp(-theta1 x))
///
/// Parameter vectors are ordered as the names returned by parameter_names().
enum class MeanForm { Linear, Quadratic, Exp2, Exp3, MichaelisMenten, TrueModel };

std::string_view to_string(MeanForm form) noexcept;
MeanForm mean_form_from_string(std::string_view name);

struct MeanFunctionSpec {
    MeanForm form = MeanForm::Linear;
    /// Number of input features.  Only Linear accepts more than one.
    std::size_t n_features = 1;

    std::size_t parameter_count() const noexcept;
    std::vector<std::string> parameter_names() const;
    /// Throws DomainError for an unsupported feature count.
    void validate() const;

    friend bool operator==(const MeanFunctionSpec&, const MeanFunctionSpec&) = default;
};

/// Inverse link functions, mapping the unconstrained scale to the constrained
/// one.  Names keep the conventional link labels ("logit" is the logistic).
enum class LinkKind { Identity, Logit, Probit, Cauchit, CLogLog, Softplus };

std::string_view to_string(LinkKind link) noexcept;
LinkKind link_from_string(std::string_view name);

/// True for the links whose range is (0, 1).
bool is_probability_link(LinkKind link) noexcept;

double apply_link(LinkKind link, double u) noexcept;

/// The unconstrained value that a probability link maps to 0.5.
double link_midpoint(LinkKind link);

enum class VarianceForm { Constant, LinearInMu };

std::string_view to_string(VarianceForm form) noexcept;
VarianceForm variance_form_from_string(std::string_view name);

struct VarianceFunctionSpec {
    VarianceForm form = VarianceForm::Constant;
    /// Identity for Constant, Softplus for LinearInMu.
    LinkKind link = LinkKind::Identity;

    std::size_t parameter_count() const noexcept;
    std::vector<std::string> parameter_names() const;
    void validate() const;

    friend bool operator==(const VarianceFunctionSpec&, const VarianceFunctionSpec&) = default;
};

/// Mean function at a feature vector.  Throws DomainError on a parameter or
/// feature count mismatch and EvaluationError at a Michaelis-Menten pole.
double eval_mean(const MeanFunctionSpec& spec, std::span<const double> theta,
                 std::span<const double> x);

inline double eval_mean(const MeanFunctionSpec& spec, std::span<const double> theta, double x) {
    return eval_mean(spec, theta, std::span<const double>(&x, 1));
}

/// Outcome scale for a predicted mean.  Throws DomainError on a parameter
/// count mismatch or a non-positive constant scale.
double eval_sigma(const VarianceFunctionSpec& spec, std::span<const double> theta_sigma,
                  double mu);

}  // namespace ppm
