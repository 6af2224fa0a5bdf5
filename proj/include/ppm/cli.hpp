#pragma once

#include <string>
#include <vector>

namespace ppm::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Runs one command line (program name excluded).  Returns the exit code:
/// 0 success, 1 runtime failure, 2 usage error.
int run(const std::vector<std::string>& args);

}  // namespace ppm::cli
