#pragma once

#include <filesystem>

#include <json.hpp>

#include "ppm/distributions.hpp"
#include "ppm/inference.hpp"
#include "ppm/model.hpp"

namespace ppm {

/// Insertion-ordered so that emitted documents are stable byte for byte.
using Json = nlohmann::ordered_json;

/// {"family", "mu", "sigma", "df", "lower", "upper"}; infinite bounds and
/// unused fields are omitted.
Json to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const Json& j);

/// {"id", "distribution": {"family", "df"}, "mean": {"form", "link", "features"},
///  "variance": {"form", "link"}, "priors": [...], "truncation": {"lower", "upper"}}
///
/// Missing priors fall back to default_priors().  Throws DomainError on any
/// malformed or inconsistent document.
Json to_json(const ModelSpec& model);
ModelSpec model_from_json(const Json& j);
ModelSpec read_model_json(const std::filesystem::path& path);

Json to_json(const Diagnostics& d);

}  // namespace ppm
