#include "ppm/simulate.hpp"

#include <cmath>
#include <string>

#include "ppm/error.hpp"
#include "ppm/functions.hpp"
#include "ppm/random.hpp"
#include "ppm/text.hpp"

namespace ppm {

Dataset simulate_dataset(std::size_t n, double theta1, double theta2, double sigma,
                         std::uint64_t seed, XLayout layout) {
    if (n == 0) throw DomainError("simulate_dataset needs n >= 1");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw DomainError("simulate_dataset needs sigma >= 0");

    RandomSource rng(seed);
    Dataset d;
    d.x.resize(n);
    d.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (layout == XLayout::Grid)
            d.x[i] = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        else
            d.x[i] = rng.uniform();
    }
    const MeanFunctionSpec truth{MeanForm::TrueModel, 1};
    const double theta[] = {theta1, theta2};
    for (std::size_t i = 0; i < n; ++i) {
        const double mu = eval_mean(truth, theta, d.x[i]);
        d.y[i] = sigma == 0.0 ? mu : mu + sigma * rng.normal();
    }
    d.provenance = "simulate_dataset(n=" + std::to_string(n) +
                   ", theta1=" + text::format_double(theta1) +
                   ", theta2=" + text::format_double(theta2) +
                   ", sigma=" + text::format_double(sigma) + ", seed=" + std::to_string(seed) +
                   (layout == XLayout::Grid ? ", grid)" : ", random-x)");
    return d;
}

Dataset subsample_every_kth(const Dataset& data, std::size_t k) {
    if (k == 0) throw DomainError("subsample step must be at least 1");
    if (k > data.size()) throw DomainError("subsample step exceeds row count; result would be empty");
    Dataset out;
    out.n_features = data.n_features;
    for (std::size_t i = k - 1; i < data.size(); i += k) {
        const auto f = data.features(i);
        out.x.insert(out.x.end(), f.begin(), f.end());
        out.y.push_back(data.y[i]);
        if (!data.x_se.empty()) out.x_se.push_back(data.x_se[i]);
        if (!data.y_se.empty()) out.y_se.push_back(data.y_se[i]);
    }
    out.provenance = data.provenance + " | every " + std::to_string(k) + "th row";
    return out;
}

Dataset simulate_classification(std::size_t n, const std::array<double, 3>& coefficients,
                                std::uint64_t seed) {
    if (n < 2) throw DomainError("simulate_classification needs n >= 2");
    RandomSource rng(seed);
    Dataset d;
    d.n_features = 2;
    d.x.resize(2 * n);
    d.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x1 = -3.0 + 6.0 * rng.uniform();
        const double x2 = -3.0 + 6.0 * rng.uniform();
        const double p = apply_link(LinkKind::Logit,
                                    coefficients[0] + coefficients[1] * x1 + coefficients[2] * x2);
        d.x[2 * i] = x1;
        d.x[2 * i + 1] = x2;
        d.y[i] = rng.uniform() < p ? 1.0 : 0.0;
    }
    d.provenance = "simulate_classification(n=" + std::to_string(n) + ", coefficients=(" +
                   text::format_double(coefficients[0]) + "," +
                   text::format_double(coefficients[1]) + "," +
                   text::format_double(coefficients[2]) + "), seed=" + std::to_string(seed) + ")";
    return d;
}

Dataset with_standard_errors(Dataset data, double x_se_min, double x_se_max, double y_se,
                             std::uint64_t seed) {
    if (data.n_features != 1) throw DomainError("standard errors require a single-feature dataset");
    if (!(x_se_min >= 0.0) || !(x_se_max >= x_se_min) || !(y_se >= 0.0))
        throw DomainError("standard errors must satisfy 0 <= x_se_min <= x_se_max and y_se >= 0");
    RandomSource rng(seed);
    data.x_se.resize(data.size());
    for (auto& s : data.x_se) s = x_se_min + (x_se_max - x_se_min) * rng.uniform();
    data.y_se.assign(data.size(), y_se);
    data.validate();
    return data;
}

}  // namespace ppm
