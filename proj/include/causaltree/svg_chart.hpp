#pragma once

#include <string>
#include <vector>

namespace causaltree {

struct ChartSeries {
  std::string label;
  std::vector<double> mean;  // y per integer step starting at 0
  std::vector<double> se;    // same length; band drawn at mean +/- se
};

/// Fixed 800x500 line chart with linear axes and computed ticks. One solid
/// polyline per series plus dashed mean +/- se band lines.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<ChartSeries>& series);

}  // namespace causaltree
