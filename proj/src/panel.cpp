#include "mvhp/panel.hpp"

#include "mvhp/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mvhp {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  s = s.substr(b, e - b);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i < line.size() && line[i] == '"') quoted = !quoted;
    if (i == line.size() || (line[i] == ',' && !quoted)) {
      cells.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return cells;
}

bool parse_number(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string label(const std::string& s) {
  return s.find(',') == std::string::npos ? s : '"' + s + '"';
}

}  // namespace

TimeSeriesPanel TimeSeriesPanel::with_values(Matrix v) const {
  TimeSeriesPanel out = *this;
  out.values = std::move(v);
  return out;
}

TimeSeriesPanel TimeSeriesPanel::unnamed(Matrix v) {
  TimeSeriesPanel out;
  for (Eigen::Index j = 0; j < v.cols(); ++j) out.names.push_back("y" + std::to_string(j + 1));
  out.values = std::move(v);
  return out;
}

TimeSeriesPanel parse_panel(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
    }
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(ErrorCode::Parse, 1, 1, "empty input");

  const std::vector<std::string> header = split_cells(lines.front());
  if (std::all_of(header.begin(), header.end(), [](const std::string& c) {
        double v;
        return parse_number(c, v);
      })) {
    throw ParseError(ErrorCode::MissingHeader, 1, 1, "first row is numeric; a header row of series names is required");
  }
  const bool has_dates = iequals(header.front(), "date");
  const std::size_t first_value_col = has_dates ? 1 : 0;
  if (header.size() <= first_value_col) throw ParseError(ErrorCode::Parse, 1, 1, "no series columns");
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c].empty()) throw ParseError(ErrorCode::MissingHeader, 1, c + 1, "blank column name");
  }

  TimeSeriesPanel panel;
  panel.names.assign(header.begin() + static_cast<std::ptrdiff_t>(first_value_col), header.end());
  const std::size_t n = lines.size() - 1;
  const std::size_t d = panel.names.size();
  if (n == 0) throw ParseError(ErrorCode::Parse, 2, 1, "no data rows");
  panel.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));

  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t file_row = r + 2;
    const std::vector<std::string> cells = split_cells(lines[r + 1]);
    if (cells.size() != header.size()) {
      throw ParseError(ErrorCode::Parse, file_row, std::min(cells.size(), header.size()) + 1,
                       "expected " + std::to_string(header.size()) + " cells, found " + std::to_string(cells.size()));
    }
    if (has_dates) panel.dates.push_back(cells.front());
    for (std::size_t c = 0; c < d; ++c) {
      double v;
      const std::string& cell = cells[c + first_value_col];
      if (!parse_number(cell, v)) {
        throw ParseError(ErrorCode::NonNumericCell, file_row, c + first_value_col + 1,
                         "cell '" + cell + "' is not a finite number");
      }
      panel.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return panel;
}

TimeSeriesPanel load_panel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_panel(buf.str());
}

std::string format_panel(const TimeSeriesPanel& panel) {
  if (!panel.dates.empty() && panel.dates.size() != static_cast<std::size_t>(panel.rows())) {
    throw Error(ErrorCode::DimensionMismatch, "date labels do not match the number of rows");
  }
  if (panel.names.size() != static_cast<std::size_t>(panel.cols())) {
    throw Error(ErrorCode::DimensionMismatch, "column names do not match the number of columns");
  }
  std::string out;
  if (!panel.dates.empty()) out += "date,";
  for (std::size_t j = 0; j < panel.names.size(); ++j) {
    if (j) out += ',';
    out += label(panel.names[j]);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < panel.rows(); ++i) {
    if (!panel.dates.empty()) {
      out += label(panel.dates[static_cast<std::size_t>(i)]);
      out += ',';
    }
    for (Eigen::Index j = 0; j < panel.cols(); ++j) {
      if (j) out += ',';
      out += format_double(panel.values(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_panel(const TimeSeriesPanel& panel, const std::filesystem::path& path) {
  const std::string text = format_panel(panel);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace mvhp
