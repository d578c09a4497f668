#pragma once

#include "mvhp/numerics.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mvhp {

/// N x d block of observations, one row per time point.
struct TimeSeriesPanel {
  Matrix values;
  std::vector<std::string> names;
  std::vector<std::string> dates;  // empty, or one opaque label per row
  std::string frequency;           // "monthly", "quarterly", ... or empty

  Eigen::Index rows() const noexcept { return values.rows(); }
  Eigen::Index cols() const noexcept { return values.cols(); }

  /// Same labels, different values.
  TimeSeriesPanel with_values(Matrix v) const;

  static TimeSeriesPanel unnamed(Matrix v);

  friend bool operator==(const TimeSeriesPanel&, const TimeSeriesPanel&) = default;
};

/// Reads a CSV panel: header row of series names, optional leading `date`
/// column carried through verbatim, numeric cells only.
TimeSeriesPanel load_panel(const std::filesystem::path& path);
TimeSeriesPanel parse_panel(const std::string& text);

/// Inverse of parse_panel; values are written with 17 significant digits.
std::string format_panel(const TimeSeriesPanel& panel);
void write_panel(const TimeSeriesPanel& panel, const std::filesystem::path& path);

}  // namespace mvhp
