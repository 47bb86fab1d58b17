/**
 * @file plot.hpp
 * @brief Minimal self-contained SVG line charts for run summaries.
 */
#pragma once

#include <string>
#include <vector>

namespace mddsim {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// A fixed-size SVG line chart with axes, ticks, and a legend. Series are
// drawn as polylines with small point markers; empty series are skipped.
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series);

void write_svg(const std::string& path, const std::string& svg);

}  // namespace mddsim
