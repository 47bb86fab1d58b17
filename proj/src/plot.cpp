/**
 * @file plot.cpp
 * @brief Hand-rolled SVG polyline charts (no plotting dependency).
 */
#include "mddsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mddsim {

namespace {

constexpr int kWidth = 840;
constexpr int kHeight = 500;
constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 170;  // room for the legend
constexpr int kMarginTop = 48;
constexpr int kMarginBottom = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Round tick step to 1/2/5 times a power of ten.
double nice_step(double span, int ticks) {
  const double raw = span / std::max(1, ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double snap = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return snap * mag;
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size())
      throw std::invalid_argument("series x/y lengths differ");
    for (size_t k = 0; k < s.x.size(); ++k) {
      xmin = std::min(xmin, s.x[k]);
      xmax = std::max(xmax, s.x[k]);
      ymin = std::min(ymin, s.y[k]);
      ymax = std::max(ymax, s.y[k]);
    }
  }
  if (!(xmin <= xmax)) throw std::invalid_argument("no data to plot");
  if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }
  if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double px0 = kMarginLeft, px1 = kWidth - kMarginRight;
  const double py0 = kHeight - kMarginBottom, py1 = kMarginTop;
  auto sx = [&](double x) { return px0 + (x - xmin) / (xmax - xmin) * (px1 - px0); };
  auto sy = [&](double y) { return py0 + (y - ymin) / (ymax - ymin) * (py1 - py0); };

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
     << kHeight << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n"
     << "<rect width='100%' height='100%' fill='white'/>\n"
     << "<text x='" << (px0 + px1) / 2 << "' y='24' font-size='16' "
        "text-anchor='middle' font-family='sans-serif'>" << title << "</text>\n";

  // Axes with ticks and grid lines.
  os << "<g font-size='11' font-family='sans-serif' fill='#333'>\n";
  const double xstep = nice_step(xmax - xmin, 8);
  for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-9 * xstep;
       t += xstep) {
    const double px = sx(t);
    os << "<line x1='" << px << "' y1='" << py0 << "' x2='" << px << "' y2='" << py1
       << "' stroke='#ddd'/>\n"
       << "<text x='" << px << "' y='" << py0 + 18 << "' text-anchor='middle'>"
       << fmt(t) << "</text>\n";
  }
  const double ystep = nice_step(ymax - ymin, 6);
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-9 * ystep;
       t += ystep) {
    const double py = sy(t);
    os << "<line x1='" << px0 << "' y1='" << py << "' x2='" << px1 << "' y2='" << py
       << "' stroke='#ddd'/>\n"
       << "<text x='" << px0 - 8 << "' y='" << py + 4 << "' text-anchor='end'>"
       << fmt(t) << "</text>\n";
  }
  os << "<line x1='" << px0 << "' y1='" << py0 << "' x2='" << px1 << "' y2='" << py0
     << "' stroke='#333'/>\n"
     << "<line x1='" << px0 << "' y1='" << py0 << "' x2='" << px0 << "' y2='" << py1
     << "' stroke='#333'/>\n"
     << "<text x='" << (px0 + px1) / 2 << "' y='" << kHeight - 14
     << "' text-anchor='middle'>" << x_label << "</text>\n"
     << "<text x='20' y='" << (py0 + py1) / 2 << "' text-anchor='middle' "
        "transform='rotate(-90 20 " << (py0 + py1) / 2 << ")'>" << y_label
     << "</text>\n</g>\n";

  // Series polylines, markers, and legend.
  int color = 0;
  double legend_y = py1 + 10;
  for (const auto& s : series) {
    if (s.x.empty()) continue;
    const char* c = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
    os << "<polyline fill='none' stroke='" << c << "' stroke-width='1.8' points='";
    for (size_t k = 0; k < s.x.size(); ++k)
      os << sx(s.x[k]) << "," << sy(s.y[k]) << " ";
    os << "'/>\n";
    for (size_t k = 0; k < s.x.size(); ++k)
      os << "<circle cx='" << sx(s.x[k]) << "' cy='" << sy(s.y[k])
         << "' r='2.4' fill='" << c << "'/>\n";
    os << "<line x1='" << px1 + 12 << "' y1='" << legend_y << "' x2='" << px1 + 34
       << "' y2='" << legend_y << "' stroke='" << c << "' stroke-width='2'/>\n"
       << "<text x='" << px1 + 40 << "' y='" << legend_y + 4
       << "' font-size='11' font-family='sans-serif'>" << s.label << "</text>\n";
    legend_y += 18;
    ++color;
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg(const std::string& path, const std::string& svg) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << svg;
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace mddsim
