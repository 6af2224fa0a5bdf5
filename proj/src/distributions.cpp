#include "ppm/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppm/error.hpp"
#include "ppm/special.hpp"

namespace ppm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double student_t_log_density(double y, double mu, double sigma, double df) noexcept {
    const double z = (y - mu) / sigma;
    return std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
           0.5 * std::log(df * special::kPi) - std::log(sigma) -
           0.5 * (df + 1.0) * std::log1p(z * z / df);
}

double student_t_cdf(double y, double mu, double sigma, double df) {
    const double t = (y - mu) / sigma;
    if (t == 0.0) return 0.5;
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double t2 = t * t;
    const double x = df / (df + t2);
    const double one_minus_x = t2 / (df + t2);
    const double tail = 0.5 * special::incomplete_beta(0.5 * df, 0.5, x, one_minus_x);
    return t > 0.0 ? 1.0 - tail : tail;
}

template <typename Cdf>
double bracketed_inverse(Cdf&& f, double p, double centre, double scale) {
    double lo = centre - scale;
    double hi = centre + scale;
    double step = scale;
    for (int i = 0; i < 2000 && f(lo) > p; ++i) {
        step *= 2.0;
        lo = centre - step;
    }
    step = scale;
    for (int i = 0; i < 2000 && f(hi) < p; ++i) {
        step *= 2.0;
        hi = centre + step;
    }
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * std::max(1.0, std::fabs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

// Bailey's polar method: exact Student-t variates from uniforms.
double student_t_variate(double df, RandomSource& rng) {
    for (;;) {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        const double w = u * u + v * v;
        if (w >= 1.0 || w == 0.0) continue;
        return u * std::sqrt(df * (std::pow(w, -2.0 / df) - 1.0) / w);
    }
}

}  // namespace

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::Normal: return "Normal";
        case Family::StudentT: return "StudentT";
        case Family::Bernoulli: return "Bernoulli";
        case Family::TruncatedNormal: return "TruncatedNormal";
    }
    return "?";
}

Family family_from_string(std::string_view name) {
    if (name == "Normal") return Family::Normal;
    if (name == "StudentT") return Family::StudentT;
    if (name == "Bernoulli") return Family::Bernoulli;
    if (name == "TruncatedNormal") return Family::TruncatedNormal;
    throw DomainError("unknown distribution family: " + std::string(name));
}

DistributionSpec::DistributionSpec(Family family, double mu, double sigma, double df,
                                   double lower, double upper)
    : family_(family), mu_(mu), sigma_(sigma), df_(df), lower_(lower), upper_(upper) {
    if (!std::isfinite(mu)) throw DomainError("distribution location must be finite");
    switch (family) {
        case Family::Bernoulli:
            if (!(mu >= 0.0 && mu <= 1.0))
                throw DomainError("Bernoulli probability must lie in [0, 1]");
            break;
        case Family::StudentT:
            if (!(df > 0.0)) throw DomainError("Student-t degrees of freedom must be positive");
            [[fallthrough]];
        case Family::Normal:
        case Family::TruncatedNormal:
            if (!(sigma > 0.0) || !std::isfinite(sigma))
                throw DomainError("scale must be positive and finite");
            break;
    }
    if (family == Family::TruncatedNormal) {
        if (std::isnan(lower) || std::isnan(upper) || !(lower < upper))
            throw DomainError("truncation requires lower < upper");
        const double a = (lower - mu) / sigma;
        const double b = (upper - mu) / sigma;
        // Work in whichever tail keeps the mass difference well conditioned.
        upper_tail_ = a > 0.0;
        const double mass = upper_tail_ ? special::normal_sf(a) - special::normal_sf(b)
                                        : special::normal_cdf(b) - special::normal_cdf(a);
        if (!(mass > 0.0)) throw DomainError("truncation interval carries no probability mass");
        log_mass_ = std::log(mass);
    }
}

DistributionSpec DistributionSpec::normal(double mu, double sigma) {
    return {Family::Normal, mu, sigma, 0.0, -kInf, kInf};
}

DistributionSpec DistributionSpec::student_t(double mu, double sigma, double df) {
    return {Family::StudentT, mu, sigma, df, -kInf, kInf};
}

DistributionSpec DistributionSpec::bernoulli(double p) {
    return {Family::Bernoulli, p, 0.0, 0.0, -kInf, kInf};
}

DistributionSpec DistributionSpec::truncated_normal(double mu, double sigma, double lower,
                                                    double upper) {
    return {Family::TruncatedNormal, mu, sigma, 0.0, lower, upper};
}

double normal_log_density(double y, double mu, double sigma) noexcept {
    const double z = (y - mu) / sigma;
    return -special::kLnSqrt2Pi - std::log(sigma) - 0.5 * z * z;
}

double log_density(const DistributionSpec& spec, double y) {
    if (std::isnan(y)) return kNegInf;
    switch (spec.family_) {
        case Family::Normal: return normal_log_density(y, spec.mu_, spec.sigma_);
        case Family::StudentT: return student_t_log_density(y, spec.mu_, spec.sigma_, spec.df_);
        case Family::Bernoulli:
            if (y == 1.0) return std::log(spec.mu_);
            if (y == 0.0) return std::log1p(-spec.mu_);
            return kNegInf;
        case Family::TruncatedNormal:
            if (y < spec.lower_ || y > spec.upper_) return kNegInf;
            return normal_log_density(y, spec.mu_, spec.sigma_) - spec.log_mass_;
    }
    return kNegInf;
}

double cdf(const DistributionSpec& spec, double y) {
    if (std::isnan(y)) throw DomainError("cdf evaluated at NaN");
    switch (spec.family_) {
        case Family::Normal: return special::normal_cdf((y - spec.mu_) / spec.sigma_);
        case Family::StudentT: return student_t_cdf(y, spec.mu_, spec.sigma_, spec.df_);
        case Family::Bernoulli:
            if (y < 0.0) return 0.0;
            if (y < 1.0) return 1.0 - spec.mu_;
            return 1.0;
        case Family::TruncatedNormal: {
            if (y <= spec.lower_) return 0.0;
            if (y >= spec.upper_) return 1.0;
            const double a = (spec.lower_ - spec.mu_) / spec.sigma_;
            const double z = (y - spec.mu_) / spec.sigma_;
            const double part = spec.upper_tail_
                                    ? special::normal_sf(a) - special::normal_sf(z)
                                    : special::normal_cdf(z) - special::normal_cdf(a);
            return std::clamp(part / std::exp(spec.log_mass_), 0.0, 1.0);
        }
    }
    return 0.0;
}

double quantile(const DistributionSpec& spec, double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile requires 0 < p < 1");
    switch (spec.family_) {
        case Family::Normal: return spec.mu_ + spec.sigma_ * special::normal_quantile(p);
        case Family::StudentT:
            if (p == 0.5) return spec.mu_;
            return bracketed_inverse(
                [&](double y) { return student_t_cdf(y, spec.mu_, spec.sigma_, spec.df_); }, p,
                spec.mu_, spec.sigma_);
        case Family::Bernoulli: return p <= 1.0 - spec.mu_ ? 0.0 : 1.0;
        case Family::TruncatedNormal: {
            const double a = (spec.lower_ - spec.mu_) / spec.sigma_;
            const double mass = std::exp(spec.log_mass_);
            double z;
            if (spec.upper_tail_) {
                z = -special::normal_quantile(special::normal_sf(a) - p * mass);
            } else {
                z = special::normal_quantile(special::normal_cdf(a) + p * mass);
            }
            return std::clamp(spec.mu_ + spec.sigma_ * z, spec.lower_, spec.upper_);
        }
    }
    return 0.0;
}

double sample_one(const DistributionSpec& spec, RandomSource& rng) {
    switch (spec.family()) {
        case Family::Normal: return spec.mu() + spec.sigma() * rng.normal();
        case Family::StudentT: return spec.mu() + spec.sigma() * student_t_variate(spec.df(), rng);
        case Family::Bernoulli: return rng.uniform() < spec.mu() ? 1.0 : 0.0;
        case Family::TruncatedNormal: return quantile(spec, rng.uniform());
    }
    return 0.0;
}

std::vector<double> sample(const DistributionSpec& spec, RandomSource& rng, std::size_t n) {
    if (n == 0) throw DomainError("sample count must be at least 1");
    std::vector<double> out(n);
    for (auto& v : out) v = sample_one(spec, rng);
    return out;
}

}  // namespace ppm
