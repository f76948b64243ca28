#include "icc/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace icc {

namespace {

// All numeric output goes through snprintf so the files depend only on the
// input doubles, never on stream locale or state.
std::string fmt(const char* spec, double a) {
  char buf[256];
  const int n = std::snprintf(buf, sizeof buf, spec, a);
  if (n < 0 || n >= static_cast<int>(sizeof buf)) throw std::logic_error("format overflow");
  return buf;
}

std::string fmt2(const char* spec, double a, double b) {
  char buf[256];
  const int n = std::snprintf(buf, sizeof buf, spec, a, b);
  if (n < 0 || n >= static_cast<int>(sizeof buf)) throw std::logic_error("format overflow");
  return buf;
}

// -0.0 and 0.0 compare equal but print differently.
double unsign_zero(double v) { return v == 0.0 ? 0.0 : v; }

// Largest of 1, 2, 5 times a power of ten that fits the target at least
// four times; keeps tick labels short for any data range.
double tick_step(double range) {
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {5.0, 2.0, 1.0}) {
    if (m * mag <= raw) return m * mag;
  }
  return mag;
}

constexpr double kWidth = 800.0, kHeight = 600.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 20.0, kBottom = 55.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

const char* verdict_word(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "skipped";
}

}  // namespace

std::string region_csv(const Polygon2D& hull) {
  std::string out = "r1_bits,r2_bits\n";
  for (const Point2& v : hull.vertices) {
    out += fmt2("%.6f,%.6f\n", unsign_zero(v.x), unsign_zero(v.y));
  }
  return out;
}

Polygon2D parse_region_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "r1_bits,r2_bits")
    throw std::invalid_argument("region csv: missing r1_bits,r2_bits header");
  Polygon2D out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    double x = 0.0, y = 0.0;
    char tail = '\0';
    if (std::sscanf(line.c_str(), "%lf,%lf%c", &x, &y, &tail) != 2)
      throw std::invalid_argument("region csv: malformed row " + std::to_string(row));
    out.vertices.push_back({x, y});
  }
  return out;
}

std::string overlay_svg(const std::vector<RegionSeries>& series) {
  double xmax = 1e-3, ymax = 1e-3;
  for (const RegionSeries& s : series) {
    const AxisIntercepts i = axis_intercepts(s.hull);
    xmax = std::max(xmax, i.r1_max);
    ymax = std::max(ymax, i.r2_max);
  }
  xmax *= 1.06;
  ymax *= 1.06;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + x / xmax * plot_w; };
  auto py = [&](double y) { return kHeight - kBottom - y / ymax * plot_h; };

  std::string svg;
  svg +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
      "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"13\">\n";
  svg += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

  // Grid and ticks.
  const double sx = tick_step(xmax), sy = tick_step(ymax);
  for (double t = 0.0; t <= xmax + 1e-12; t += sx) {
    svg += fmt2("<line x1=\"%.2f\" y1=\"%.2f\" ", px(t), py(0.0));
    svg += fmt2("x2=\"%.2f\" y2=\"%.2f\" stroke=\"#dddddd\"/>\n", px(t), py(ymax));
    svg += fmt2("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">", px(t),
                kHeight - kBottom + 18.0);
    svg += fmt("%.6g</text>\n", unsign_zero(t));
  }
  for (double t = 0.0; t <= ymax + 1e-12; t += sy) {
    svg += fmt2("<line x1=\"%.2f\" y1=\"%.2f\" ", px(0.0), py(t));
    svg += fmt2("x2=\"%.2f\" y2=\"%.2f\" stroke=\"#dddddd\"/>\n", px(xmax), py(t));
    svg += fmt2("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">", kLeft - 8.0, py(t) + 4.0);
    svg += fmt("%.6g</text>\n", unsign_zero(t));
  }
  svg += fmt2(
      "<rect x=\"%.2f\" y=\"%.2f\" ", kLeft, kTop);
  svg += fmt2("width=\"%.2f\" height=\"%.2f\" fill=\"none\" stroke=\"black\"/>\n", plot_w,
              plot_h);
  svg += fmt2("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">R1 (bits)</text>\n",
              kLeft + plot_w / 2.0, kHeight - 12.0);
  svg += fmt2(
      "<text x=\"18\" y=\"%.2f\" text-anchor=\"middle\" transform=\"rotate(-90 18 %.2f)\">"
      "R2 (bits)</text>\n",
      kTop + plot_h / 2.0, kTop + plot_h / 2.0);

  // One closed polyline per region.
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Polygon2D& hull = series[k].hull;
    const char* color = kPalette[k % kPaletteSize];
    if (hull.size() == 1) {
      svg += fmt2("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"", px(hull.vertices[0].x),
                  py(hull.vertices[0].y));
      svg += color;
      svg += "\"/>\n";
      continue;
    }
    if (hull.empty()) continue;
    svg += "<path d=\"";
    for (std::size_t i = 0; i < hull.size(); ++i) {
      svg += fmt2(i == 0 ? "M%.2f %.2f" : " L%.2f %.2f", px(hull.vertices[i].x),
                  py(hull.vertices[i].y));
    }
    svg += " Z\" fill=\"none\" stroke-width=\"2\" stroke=\"";
    svg += color;
    svg += "\"/>\n";
  }

  // Legend, drawing order.
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double ly = kTop + 16.0 + 20.0 * static_cast<double>(k);
    svg += fmt2("<line x1=\"%.2f\" y1=\"%.2f\" ", kWidth - 170.0, ly);
    svg += fmt2("x2=\"%.2f\" y2=\"%.2f\" stroke-width=\"2\" stroke=\"", kWidth - 140.0, ly);
    svg += kPalette[k % kPaletteSize];
    svg += "\"/>\n";
    svg += fmt2("<text x=\"%.2f\" y=\"%.2f\">", kWidth - 132.0, ly + 4.0);
    svg += series[k].name;
    svg += "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string run_report(const std::vector<RegionSeries>& regions,
                       const std::vector<ReportCheck>& checks, double wall_seconds) {
  std::string out;
  for (const RegionSeries& r : regions) {
    const AxisIntercepts i = axis_intercepts(r.hull);
    out += "region " + r.name + ": " + std::to_string(r.hull.size()) + " vertices";
    out += fmt2(", intercepts r1=%.6f r2=%.6f\n", i.r1_max, i.r2_max);
    for (const Point2& v : r.hull.vertices) {
      out += fmt2("  %.6f, %.6f\n", unsign_zero(v.x), unsign_zero(v.y));
    }
  }
  if (!regions.empty()) out += "\n";
  for (const ReportCheck& c : checks) {
    out += "check " + c.name + ": " + verdict_word(c.verdict);
    out += fmt(" (tolerance %g)", c.tolerance);
    if (!c.detail.empty()) out += "  " + c.detail;
    out += "\n";
  }
  out += fmt("wall_seconds: %.3f\n", wall_seconds);
  return out;
}

}  // namespace icc
