#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ppm/random.hpp"

namespace ppm {

/// Families available for the data-generating distribution and for priors.
enum class Family { Normal, StudentT, Bernoulli, TruncatedNormal };

std::string_view to_string(Family family) noexcept;
Family family_from_string(std::string_view name);

/// A fully parameterised distribution.  Instances are validated on
/// construction, so every operation below can assume a well-formed spec.
class DistributionSpec {
public:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    static DistributionSpec normal(double mu, double sigma);
    static DistributionSpec student_t(double mu, double sigma, double df);
    static DistributionSpec bernoulli(double p);
    /// Either bound may be infinite; lower < upper is required.
    static DistributionSpec truncated_normal(double mu, double sigma, double lower = -kInf,
                                             double upper = kInf);

    Family family() const noexcept { return family_; }
    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }
    double df() const noexcept { return df_; }
    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

private:
    DistributionSpec(Family family, double mu, double sigma, double df, double lower,
                     double upper);

    Family family_;
    double mu_;
    double sigma_;
    double df_;
    double lower_;
    double upper_;
    // Cached normalising mass of the truncated normal, and which tail it was
    // computed in.
    double log_mass_ = 0.0;
    bool upper_tail_ = false;

    friend double log_density(const DistributionSpec&, double);
    friend double cdf(const DistributionSpec&, double);
    friend double quantile(const DistributionSpec&, double);
};

/// Natural-log density (mass for Bernoulli).  Returns -inf outside the support.
double log_density(const DistributionSpec& spec, double y);

/// P(Y <= y).
double cdf(const DistributionSpec& spec, double y);

/// Inverse CDF; throws DomainError unless 0 < p < 1.  For Bernoulli this is
/// the smallest y in {0, 1} with cdf(y) >= p.
double quantile(const DistributionSpec& spec, double p);

/// One draw.
double sample_one(const DistributionSpec& spec, RandomSource& rng);

/// n independent draws; throws DomainError when n == 0.
std::vector<double> sample(const DistributionSpec& spec, RandomSource& rng, std::size_t n);

/// Closed-form normal log-density, shared by the hot likelihood loops.
double normal_log_density(double y, double mu, double sigma) noexcept;

}  // namespace ppm
