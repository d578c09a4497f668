#pragma once

#include "mvhp/numerics.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mvhp {

struct SeriesPlot {
  std::string name;
  std::vector<double> raw;
  std::vector<double> trend;
  std::optional<std::vector<double>> fixed_trend;
};

/// Two stacked 1200x400 windows, the first and second halves of the sample.
/// Raw data in grey, the trend as a thick line, the fixed-lambda trend thin.
std::string render_svg(const SeriesPlot& plot);

/// Writes <dir>/<name>.svg for every column. Returns the written paths.
std::vector<std::filesystem::path> write_plots(const std::filesystem::path& dir,
                                               const std::vector<std::string>& names, const Matrix& raw,
                                               const Matrix& trend, const Matrix* fixed_trend);

}  // namespace mvhp
