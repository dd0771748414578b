#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lcca/numerics.hpp"

namespace lcca::app {

struct Table {
  std::vector<std::string> header;
  Matrix values;
};

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header, const Matrix& values);

/// Numeric CSV with a header row. Parse errors carry the 1-based line number.
Table read_csv(const std::filesystem::path& path);

}  // namespace lcca::app
