#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace ppm {

/// Rows of (features, outcome) with optional per-row standard errors.
///
/// Features are stored row-major.  Standard errors apply to single-feature
/// datasets only: x_se and y_se are either empty (exactly known) or hold one
/// non-negative entry per row.
struct Dataset {
    std::size_t n_features = 1;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> x_se;
    std::vector<double> y_se;
    std::string provenance;

    std::size_t size() const noexcept { return y.size(); }
    bool empty() const noexcept { return y.empty(); }

    std::span<const double> features(std::size_t row) const {
        return {x.data() + row * n_features, n_features};
    }

    /// Throws DomainError when the columns are not rectangular.
    void validate() const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Single-feature dataset from parallel x/y columns.
Dataset make_dataset(std::vector<double> x, std::vector<double> y);

/// CSV header "x,y[,x_se][,y_se]" or "x1,...,xD,y".  Values are written in
/// shortest round-trip form.
void write_dataset_csv(const Dataset& data, std::ostream& out);
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace ppm
