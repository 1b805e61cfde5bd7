#pragma once

#include <string>
#include <vector>

// Self-contained SVG line charts for trace signals; no external tooling.

namespace armlab::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 960;
  int height = 540;
};

std::string line_chart(const ChartSpec& spec, const std::vector<Series>& series);

}  // namespace armlab::svg
