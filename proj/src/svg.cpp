#include "armlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace armlab::svg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
constexpr int kMarginLeft = 70, kMarginRight = 20, kMarginTop = 40, kMarginBottom = 50;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) {  // no data
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

double tick_step(double range) {
  const double raw = range / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  if (norm < 1.5) return mag;
  if (norm < 3.5) return 2.0 * mag;
  if (norm < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

}  // namespace

std::string line_chart(const ChartSpec& spec, const std::vector<Series>& series) {
  Range xr, yr;
  for (const Series& s : series) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  xr.pad();
  yr.pad();

  const double plot_w = spec.width - kMarginLeft - kMarginRight;
  const double plot_h = spec.height - kMarginTop - kMarginBottom;
  const auto px = [&](double x) { return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  const auto py = [&](double y) {
    return kMarginTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
         std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + std::to_string(spec.width / 2) +
         "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         escape(spec.title) + "</text>\n";

  // Gridlines and tick labels.
  const double xstep = tick_step(xr.hi - xr.lo);
  const double ystep = tick_step(yr.hi - yr.lo);
  for (double x = std::ceil(xr.lo / xstep) * xstep; x <= xr.hi + 1e-12 * xstep; x += xstep) {
    out += "<line x1=\"" + fmt("%.2f", px(x)) + "\" y1=\"" + std::to_string(kMarginTop) +
           "\" x2=\"" + fmt("%.2f", px(x)) + "\" y2=\"" +
           fmt("%.2f", kMarginTop + plot_h) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt("%.2f", px(x)) + "\" y=\"" + fmt("%.2f", kMarginTop + plot_h + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           fmt("%g", x) + "</text>\n";
  }
  for (double y = std::ceil(yr.lo / ystep) * ystep; y <= yr.hi + 1e-12 * ystep; y += ystep) {
    out += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" + fmt("%.2f", py(y)) +
           "\" x2=\"" + fmt("%.2f", kMarginLeft + plot_w) + "\" y2=\"" + fmt("%.2f", py(y)) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + std::to_string(kMarginLeft - 8) + "\" y=\"" + fmt("%.2f", py(y) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt("%g", y) +
           "</text>\n";
  }
  out += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" + std::to_string(kMarginTop) +
         "\" width=\"" + fmt("%.2f", plot_w) + "\" height=\"" + fmt("%.2f", plot_h) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // Axis labels.
  out += "<text x=\"" + fmt("%.2f", kMarginLeft + plot_w / 2) + "\" y=\"" +
         std::to_string(spec.height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape(spec.x_label) + "</text>\n";
  out += "<text x=\"18\" y=\"" + fmt("%.2f", kMarginTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
         fmt("%.2f", kMarginTop + plot_h / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string points;
    const std::size_t n = std::min(s.x.size(), s.y.size());
    points.reserve(n * 14);
    for (std::size_t k = 0; k < n; ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      points += fmt("%.2f", px(s.x[k]));
      points += ',';
      points += fmt("%.2f", py(s.y[k]));
      points += ' ';
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.2\" points=\"" + points + "\"/>\n";

    // Legend entry.
    const double ly = kMarginTop + 14 + 18 * static_cast<double>(i);
    out += "<line x1=\"" + fmt("%.2f", kMarginLeft + plot_w - 150) + "\" y1=\"" + fmt("%.2f", ly) +
           "\" x2=\"" + fmt("%.2f", kMarginLeft + plot_w - 125) + "\" y2=\"" + fmt("%.2f", ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt("%.2f", kMarginLeft + plot_w - 118) + "\" y=\"" + fmt("%.2f", ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace armlab::svg
