#include "svg_chart.hpp"

#include <algorithm>
#include <cstdio>

#include "io_util.hpp"

namespace asysa::cli {

namespace {

constexpr double kBarWidth = 34.0;
constexpr double kPairGap = 6.0;
constexpr double kGroupGap = 30.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 56.0;
constexpr double kMarginBottom = 78.0;
constexpr double kPlotHeight = 260.0;
constexpr const char* kFirstFill = "#4878a8";
constexpr const char* kSecondFill = "#c2683e";

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt_value(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

void add_text(std::string& svg, double x, double y, const std::string& anchor, int size,
              const char* fill, const std::string& text) {
  svg += "<text x=\"" + fmt_fixed(x, 1) + "\" y=\"" + fmt_fixed(y, 1) + "\" text-anchor=\"" +
         anchor + "\" font-family=\"Helvetica,Arial,sans-serif\" font-size=\"" +
         std::to_string(size) + "\" fill=\"" + fill + "\">" + escape_xml(text) + "</text>\n";
}

void add_rect(std::string& svg, double x, double y, double w, double h, const char* fill) {
  svg += "<rect x=\"" + fmt_fixed(x, 1) + "\" y=\"" + fmt_fixed(y, 1) + "\" width=\"" +
         fmt_fixed(w, 1) + "\" height=\"" + fmt_fixed(h, 1) + "\" fill=\"" + fill + "\"/>\n";
}

}  // namespace

std::string grouped_bar_svg(const ChartSpec& spec, const std::vector<BarGroup>& groups) {
  const std::size_t n = groups.size();
  const double group_width = 2.0 * kBarWidth + kPairGap;
  const double plot_width =
      n == 0 ? 200.0 : double(n) * group_width + double(n - 1) * kGroupGap;
  const double width = kMarginLeft + plot_width + kMarginRight;
  const double height = kMarginTop + kPlotHeight + kMarginBottom;
  const double base_y = kMarginTop + kPlotHeight;

  double max_value = 0.0;
  for (const BarGroup& g : groups) {
    max_value = std::max({max_value, g.first, g.second});
  }
  if (max_value <= 0.0) {
    max_value = 1.0;
  }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_fixed(width, 1) +
         "\" height=\"" + fmt_fixed(height, 1) + "\" viewBox=\"0 0 " + fmt_fixed(width, 1) + " " +
         fmt_fixed(height, 1) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt_fixed(width, 1) + "\" height=\"" +
         fmt_fixed(height, 1) + "\" fill=\"#ffffff\"/>\n";
  add_text(svg, kMarginLeft, 24.0, "start", 15, "#202020", spec.title);

  // Legend, top right.
  const double legend_x = width - kMarginRight - 240.0;
  add_rect(svg, legend_x, 12.0, 12.0, 12.0, kFirstFill);
  add_text(svg, legend_x + 18.0, 22.0, "start", 11, "#202020", spec.first_name);
  add_rect(svg, legend_x + 120.0, 12.0, 12.0, 12.0, kSecondFill);
  add_text(svg, legend_x + 138.0, 22.0, "start", 11, "#202020", spec.second_name);

  // Horizontal gridlines at quarters of the maximum.
  for (int i = 0; i <= 4; ++i) {
    const double frac = double(i) / 4.0;
    const double y = base_y - frac * kPlotHeight;
    svg += "<line x1=\"" + fmt_fixed(kMarginLeft, 1) + "\" y1=\"" + fmt_fixed(y, 1) + "\" x2=\"" +
           fmt_fixed(kMarginLeft + plot_width, 1) + "\" y2=\"" + fmt_fixed(y, 1) +
           "\" stroke=\"" + (i == 0 ? "#404040" : "#d8d8d8") + "\" stroke-width=\"1\"/>\n";
    add_text(svg, kMarginLeft - 8.0, y + 4.0, "end", 10, "#606060", fmt_value(frac * max_value));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const BarGroup& g = groups[i];
    const double x0 = kMarginLeft + double(i) * (group_width + kGroupGap);
    const double h1 = kPlotHeight * (g.first / max_value);
    const double h2 = kPlotHeight * (g.second / max_value);
    add_rect(svg, x0, base_y - h1, kBarWidth, h1, kFirstFill);
    add_rect(svg, x0 + kBarWidth + kPairGap, base_y - h2, kBarWidth, h2, kSecondFill);
    add_text(svg, x0 + kBarWidth / 2.0, base_y - h1 - 4.0, "middle", 9, "#202020",
             fmt_value(g.first));
    add_text(svg, x0 + kBarWidth + kPairGap + kBarWidth / 2.0, base_y - h2 - 4.0, "middle", 9,
             "#202020", fmt_value(g.second));
    add_text(svg, x0 + group_width / 2.0, base_y + 16.0, "middle", 11, "#202020", g.label);
    if (!g.annotation.empty()) {
      add_text(svg, x0 + group_width / 2.0, base_y + 30.0, "middle", 10, "#606060", g.annotation);
    }
  }

  if (!spec.note.empty()) {
    add_text(svg, kMarginLeft, height - 14.0, "start", 10, "#808080", spec.note);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace asysa::cli
