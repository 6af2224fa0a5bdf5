#pragma once

#include <filesystem>

#include "ppm/experiments.hpp"
#include "ppm/json_io.hpp"

namespace ppm {

/// Runs every demonstration and writes plot-ready CSV files plus report.json
/// into `dir` (created if needed).  `run_config` is embedded in report.json.
/// Output bytes depend only on the seed, never on the thread count.
void write_report(const std::filesystem::path& dir, const experiments::Settings& settings,
                  const Json& run_config);

}  // namespace ppm
