#pragma once

// Scalar special functions shared by the distribution and link code.

namespace ppm::special {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLnSqrt2Pi = 0.91893853320467274178;

/// Standard normal CDF, accurate in both tails.
double normal_cdf(double z) noexcept;

/// Standard normal upper tail 1 - Phi(z) without cancellation.
double normal_sf(double z) noexcept;

/// Inverse standard normal CDF.  p must lie in (0, 1); 0 and 1 map to -inf/+inf.
double normal_quantile(double p) noexcept;

/// Regularized incomplete beta I_x(a, b).  Takes both x and 1 - x so callers
/// can supply the complement without cancellation.
double incomplete_beta(double a, double b, double x, double one_minus_x);

/// ln(1 + e^u) without overflow.
double softplus(double u) noexcept;

}  // namespace ppm::special
