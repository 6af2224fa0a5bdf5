#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ppm::text {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view token);

std::vector<std::string> split(std::string_view line, char sep);

/// Writes via a temporary file in the same directory followed by a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace ppm::text
