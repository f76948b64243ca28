#pragma once

#include <string>
#include <vector>

#include "icc/geometry.hpp"

namespace icc {

/// One named region as it appears in tables, plots and the report.
struct RegionSeries {
  std::string name;
  Polygon2D hull;
};

/// Vertex table: header `r1_bits,r2_bits`, one vertex per row in CCW order
/// starting at the lexicographic minimum (the hull's native order), six
/// decimals.  Depends only on the vertex doubles, so equal hulls serialize
/// byte-identically.
[[nodiscard]] std::string region_csv(const Polygon2D& hull);

/// Inverse of region_csv, for round-trip checks.  Throws
/// std::invalid_argument on a malformed header or row.
[[nodiscard]] Polygon2D parse_region_csv(const std::string& text);

/// Fixed 800x600 overlay plot of the series: axes in bits with ticks, one
/// closed polyline per region, a legend in drawing order.  Styling is
/// fixed, output depends only on the series content.
[[nodiscard]] std::string overlay_svg(const std::vector<RegionSeries>& series);

/// Outcome of one reported check.
enum class Verdict { Pass, Fail, Skipped };

struct ReportCheck {
  std::string name;
  Verdict verdict = Verdict::Skipped;
  double tolerance = 0.0;
  std::string detail;
};

/// Plain-text report: per-region vertex lists with intercepts, then the
/// checks with their tolerances, then the wall-clock time.  The timing line
/// is the only non-reproducible output of a run.
[[nodiscard]] std::string run_report(const std::vector<RegionSeries>& regions,
                                     const std::vector<ReportCheck>& checks,
                                     double wall_seconds);

}  // namespace icc
