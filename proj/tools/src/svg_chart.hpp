#pragma once

#include <string>
#include <vector>

namespace asysa::cli {

struct BarGroup {
  std::string label;
  double first = 0.0;
  double second = 0.0;
  std::string annotation;  // short line under the label, e.g. "-18.7%"
};

struct ChartSpec {
  std::string title;
  std::string first_name;   // legend entry for the first bar of each pair
  std::string second_name;  // legend entry for the second bar
  std::string note;         // caveat line under the chart; empty to omit
};

/// Static grouped bar chart. Output bytes depend only on the inputs: all
/// coordinates and value labels use fixed formatting, so identical data
/// yields an identical file.
std::string grouped_bar_svg(const ChartSpec& spec, const std::vector<BarGroup>& groups);

}  // namespace asysa::cli
