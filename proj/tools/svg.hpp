#pragma once

#include <string>
#include <vector>

namespace hvlab::cli {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> y;
};

/// Self-contained SVG line plot of several series over a shared x axis.
std::string line_plot_svg(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                          const std::vector<Series>& series);

}  // namespace hvlab::cli
