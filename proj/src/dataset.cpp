#include "ppm/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "ppm/error.hpp"
#include "ppm/text.hpp"

namespace ppm {

void Dataset::validate() const {
    if (n_features == 0) throw DomainError("dataset needs at least one feature");
    if (x.size() != y.size() * n_features)
        throw DomainError("dataset is not rectangular: feature count does not match rows");
    for (const auto* se : {&x_se, &y_se}) {
        if (se->empty()) continue;
        if (n_features != 1) throw DomainError("standard errors require a single-feature dataset");
        if (se->size() != y.size()) throw DomainError("standard error column length mismatch");
        for (double s : *se)
            if (!(s >= 0.0)) throw DomainError("standard errors must be non-negative");
    }
}

Dataset make_dataset(std::vector<double> x, std::vector<double> y) {
    Dataset d;
    d.x = std::move(x);
    d.y = std::move(y);
    d.validate();
    return d;
}

void write_dataset_csv(const Dataset& data, std::ostream& out) {
    data.validate();
    const bool with_x_se = !data.x_se.empty();
    const bool with_y_se = !data.y_se.empty();
    if (data.n_features == 1) {
        out << "x,y";
    } else {
        for (std::size_t j = 0; j < data.n_features; ++j) out << (j ? ",x" : "x") << j + 1;
        out << ",y";
    }
    if (with_x_se) out << ",x_se";
    if (with_y_se) out << ",y_se";
    out << '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < data.n_features; ++j)
            out << (j ? "," : "") << text::format_double(data.x[i * data.n_features + j]);
        out << ',' << text::format_double(data.y[i]);
        if (with_x_se) out << ',' << text::format_double(data.x_se[i]);
        if (with_y_se) out << ',' << text::format_double(data.y_se[i]);
        out << '\n';
    }
}

Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DomainError("dataset CSV is empty");
    const auto header = text::split(line, ',');

    std::vector<std::size_t> feature_cols;
    std::ptrdiff_t y_col = -1, x_se_col = -1, y_se_col = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto& h = header[c];
        if (h == "x") {
            if (!feature_cols.empty()) throw DomainError("dataset CSV mixes x and x1..xD columns");
            feature_cols.push_back(c);
        } else if (h == "y") {
            y_col = static_cast<std::ptrdiff_t>(c);
        } else if (h == "x_se") {
            x_se_col = static_cast<std::ptrdiff_t>(c);
        } else if (h == "y_se") {
            y_se_col = static_cast<std::ptrdiff_t>(c);
        } else if (h.size() > 1 && h[0] == 'x' &&
                   h.find_first_not_of("0123456789", 1) == std::string::npos) {
            const auto idx = std::stoul(h.substr(1));
            if (idx != feature_cols.size() + 1)
                throw DomainError("feature columns must be x1..xD in order");
            feature_cols.push_back(c);
        } else {
            throw DomainError("unknown dataset column: " + h);
        }
    }
    if (feature_cols.empty() || y_col < 0) throw DomainError("dataset CSV needs x and y columns");

    Dataset d;
    d.n_features = feature_cols.size();
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = text::split(line, ',');
        if (cells.size() != header.size())
            throw DomainError("dataset CSV line " + std::to_string(lineno) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(header.size()));
        for (auto c : feature_cols) d.x.push_back(text::parse_double(cells[c]));
        d.y.push_back(text::parse_double(cells[static_cast<std::size_t>(y_col)]));
        if (x_se_col >= 0) d.x_se.push_back(text::parse_double(cells[static_cast<std::size_t>(x_se_col)]));
        if (y_se_col >= 0) d.y_se.push_back(text::parse_double(cells[static_cast<std::size_t>(y_se_col)]));
    }
    d.validate();
    return d;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset " + path.string());
    auto d = read_dataset_csv(in);
    d.provenance = path.filename().string();
    return d;
}

}  // namespace ppm
