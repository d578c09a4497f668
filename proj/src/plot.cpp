#include "mvhp/plot.hpp"

#include "mvhp/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace mvhp {

namespace {

constexpr double kWidth = 1200.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 30.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Window {
  std::size_t begin, end;
  double top;
};

std::string polyline(const std::vector<double>& v, const Window& w, double lo, double hi, const char* style) {
  const double span = hi > lo ? hi - lo : 1.0;
  const double steps = static_cast<double>(std::max<std::size_t>(w.end - w.begin - 1, 1));
  std::string pts;
  for (std::size_t t = w.begin; t < w.end; ++t) {
    const double x = kMargin + (kWidth - 2 * kMargin) * static_cast<double>(t - w.begin) / steps;
    const double y = w.top + kMargin + (kHeight - 2 * kMargin) * (hi - v[t]) / span;
    if (!pts.empty()) pts += ' ';
    pts += fmt(x) + ',' + fmt(y);
  }
  return "  <polyline fill=\"none\" " + std::string(style) + " points=\"" + pts + "\"/>\n";
}

}  // namespace

std::string render_svg(const SeriesPlot& plot) {
  const std::size_t n = plot.raw.size();
  if (n < 2 || plot.trend.size() != n || (plot.fixed_trend && plot.fixed_trend->size() != n)) {
    throw Error(ErrorCode::DimensionMismatch, "plot series must share a length of at least 2");
  }
  const std::size_t half = n / 2;
  const Window windows[2] = {{0, std::max<std::size_t>(half, 1), 0.0}, {half, n, kHeight}};

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
                    fmt(2 * kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + ' ' + fmt(2 * kHeight) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Window& w : windows) {
    double lo = INFINITY, hi = -INFINITY;
    auto widen = [&](const std::vector<double>& v) {
      for (std::size_t t = w.begin; t < w.end; ++t) {
        lo = std::min(lo, v[t]);
        hi = std::max(hi, v[t]);
      }
    };
    widen(plot.raw);
    widen(plot.trend);
    if (plot.fixed_trend) widen(*plot.fixed_trend);

    svg += "  <text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(w.top + 20) + "\" font-family=\"sans-serif\" font-size=\"14\">" +
           escape(plot.name) + " [" + std::to_string(w.begin) + ", " + std::to_string(w.end) + ")</text>\n";
    svg += polyline(plot.raw, w, lo, hi, "stroke=\"#999999\" stroke-width=\"1\"");
    if (plot.fixed_trend) svg += polyline(*plot.fixed_trend, w, lo, hi, "stroke=\"#d62728\" stroke-width=\"1\"");
    svg += polyline(plot.trend, w, lo, hi, "stroke=\"#1f3b73\" stroke-width=\"3\"");
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> write_plots(const std::filesystem::path& dir,
                                               const std::vector<std::string>& names, const Matrix& raw,
                                               const Matrix& trend, const Matrix* fixed_trend) {
  auto column = [](const Matrix& m, Eigen::Index k) {
    std::vector<double> v(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index t = 0; t < m.rows(); ++t) v[static_cast<std::size_t>(t)] = m(t, k);
    return v;
  };
  if (static_cast<Eigen::Index>(names.size()) != raw.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "one name per column is required");
  }
  std::vector<std::filesystem::path> written;
  for (Eigen::Index k = 0; k < raw.cols(); ++k) {
    SeriesPlot p{names[static_cast<std::size_t>(k)], column(raw, k), column(trend, k), std::nullopt};
    if (fixed_trend) p.fixed_trend = column(*fixed_trend, k);
    const std::filesystem::path path = dir / (p.name + ".svg");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << render_svg(p);
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace mvhp
