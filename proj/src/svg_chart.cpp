#include "causaltree/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "causaltree/errors.hpp"
#include "causaltree/numfmt.hpp"

namespace causaltree {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 780, kTop = 50, kBottom = 440;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

double nice_tick(double range, int target_ticks) {
  if (range <= 0.0) return 1.0;
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= mult * mag) return mult * mag;
  }
  return 10.0 * mag;
}

std::string polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::string& color, bool dashed) {
  std::ostringstream s;
  s << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
    << (dashed ? "1" : "2") << "\"";
  if (dashed) s << " stroke-dasharray=\"4 3\" opacity=\"0.6\"";
  s << " points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s << ' ';
    s << fmt_sig12(xs[i]) << ',' << fmt_sig12(ys[i]);
  }
  s << "\"/>\n";
  return s.str();
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<ChartSeries>& series) {
  if (series.empty()) throw ValueError("chart needs at least one series");
  std::size_t steps = 0;
  double y_min = 0.0, y_max = -1e300;
  for (const ChartSeries& s : series) {
    if (s.mean.size() != s.se.size() || s.mean.empty())
      throw ValueError("chart series needs matching nonempty mean/se");
    steps = std::max(steps, s.mean.size());
    for (std::size_t i = 0; i < s.mean.size(); ++i) {
      y_min = std::min(y_min, s.mean[i] - s.se[i]);
      y_max = std::max(y_max, s.mean[i] + s.se[i]);
    }
  }
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double x_max = static_cast<double>(steps - 1);
  const double x_tick = nice_tick(x_max, 8);
  const double y_tick = nice_tick(y_max - y_min, 6);

  auto sx = [&](double x) { return kLeft + (kRight - kLeft) * (x_max > 0 ? x / x_max : 0.0); };
  auto sy = [&](double y) { return kBottom - (kBottom - kTop) * (y - y_min) / (y_max - y_min); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  out << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "  <text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"17\">"
      << title << "</text>\n";

  // axes
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";
  for (double x = 0.0; x <= x_max + 1e-9; x += x_tick) {
    out << "  <line x1=\"" << sx(x) << "\" y1=\"" << kBottom << "\" x2=\"" << sx(x) << "\" y2=\""
        << kBottom + 5 << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << sx(x) << "\" y=\"" << kBottom + 20 << "\" text-anchor=\"middle\">"
        << fmt_sig12(x) << "</text>\n";
    if (x_tick <= 0.0) break;
  }
  for (double y = std::ceil(y_min / y_tick) * y_tick; y <= y_max + 1e-9; y += y_tick) {
    out << "  <line x1=\"" << kLeft - 5 << "\" y1=\"" << sy(y) << "\" x2=\"" << kLeft
        << "\" y2=\"" << sy(y) << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << kLeft - 9 << "\" y=\"" << sy(y) + 4
        << "\" text-anchor=\"end\">" << fmt_sig12(y) << "</text>\n";
    if (y_tick <= 0.0) break;
  }
  out << "  <text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 18
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "  <text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << (kTop + kBottom) / 2 << ")\">"
      << y_label << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const ChartSeries& s = series[si];
    const std::string color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::vector<double> xs, ys, lo, hi;
    for (std::size_t i = 0; i < s.mean.size(); ++i) {
      xs.push_back(sx(static_cast<double>(i)));
      ys.push_back(sy(s.mean[i]));
      lo.push_back(sy(s.mean[i] - s.se[i]));
      hi.push_back(sy(s.mean[i] + s.se[i]));
    }
    out << polyline(xs, hi, color, true);
    out << polyline(xs, lo, color, true);
    out << polyline(xs, ys, color, false);
    const double ly = kTop + 18.0 * static_cast<double>(si);
    out << "  <line x1=\"" << kRight - 150 << "\" y1=\"" << ly << "\" x2=\"" << kRight - 125
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "  <text x=\"" << kRight - 118 << "\" y=\"" << ly + 4 << "\">" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace causaltree
