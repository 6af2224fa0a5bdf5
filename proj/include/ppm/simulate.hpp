#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "ppm/dataset.hpp"

namespace ppm {

enum class XLayout {
    Grid,    ///< n evenly spaced points on [0, 1], endpoints included
    Random,  ///< n independent uniform draws on [0, 1]
};

/// Running-example generator: y ~ Normal(theta2 + tanh(theta1 x / 2), sigma).
///
/// sigma == 0 yields noiseless fixtures; sigma < 0 throws DomainError.
Dataset simulate_dataset(std::size_t n, double theta1, double theta2, double sigma,
                         std::uint64_t seed, XLayout layout = XLayout::Grid);

/// Rows k, 2k, 3k, ... (1-based).  Throws DomainError for k == 0 or k > n.
Dataset subsample_every_kth(const Dataset& data, std::size_t k);

/// Two features uniform on [-3, 3]^2, labels ~ Bernoulli(logistic(c0 + c1 x1 + c2 x2)).
Dataset simulate_classification(std::size_t n, const std::array<double, 3>& coefficients,
                                std::uint64_t seed);

/// Attaches measurement standard errors to a single-feature dataset: x_se
/// drawn uniformly on [x_se_min, x_se_max] per row, y_se constant.
Dataset with_standard_errors(Dataset data, double x_se_min, double x_se_max, double y_se,
                             std::uint64_t seed);

}  // namespace ppm
