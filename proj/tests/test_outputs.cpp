#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "icc/baselines.hpp"
#include "icc/geometry.hpp"
#include "icc/outputs.hpp"

using namespace icc;

namespace {

Polygon2D sample_hull() {
  ChannelParams p;
  p.P1 = 6.0;
  p.P2 = 1.5;
  p.a12 = 0.74;
  p.a21 = 0.43;
  return hk_region(p, 9).hull;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("region CSV: header, one fixed-point row per vertex") {
  Polygon2D hull;
  hull.vertices = {{0.0, 0.0}, {1.5, 0.0}, {1.0, 1.0}, {0.0, 1.25}};
  const std::string csv = region_csv(hull);
  CHECK(csv ==
        "r1_bits,r2_bits\n"
        "0.000000,0.000000\n"
        "1.500000,0.000000\n"
        "1.000000,1.000000\n"
        "0.000000,1.250000\n");
}

TEST_CASE("region CSV: negative zero prints as zero") {
  Polygon2D hull;
  hull.vertices = {{-0.0, 0.0}, {1.0, -0.0}, {0.0, 1.0}};
  const std::string csv = region_csv(hull);
  CHECK(csv.find("-0.000000") == std::string::npos);
}

TEST_CASE("region CSV: every parsed row lies on the declared hull") {
  const Polygon2D hull = sample_hull();
  REQUIRE(hull.size() >= 4);
  const Polygon2D back = parse_region_csv(region_csv(hull));
  REQUIRE(back.size() == hull.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(distance_to_polygon(hull, back.vertices[i]) <= 1e-6);
    // Vertex order survives the round trip as well.
    CHECK(std::abs(back.vertices[i].x - hull.vertices[i].x) <= 1e-6);
    CHECK(std::abs(back.vertices[i].y - hull.vertices[i].y) <= 1e-6);
  }
}

TEST_CASE("region CSV: equal hulls serialize to identical bytes") {
  const Polygon2D a = sample_hull();
  const Polygon2D b = sample_hull();
  CHECK(region_csv(a) == region_csv(b));
}

TEST_CASE("region CSV parser rejects malformed input") {
  CHECK_THROWS_AS(parse_region_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_region_csv("x,y\n0,0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_region_csv("r1_bits,r2_bits\n0.1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_region_csv("r1_bits,r2_bits\n0.1,0.2,0.3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_region_csv("r1_bits,r2_bits\none,two\n"), std::invalid_argument);
}

TEST_CASE("overlay SVG: one closed path per region, labels and legend present") {
  std::vector<RegionSeries> series;
  series.push_back({"hk", sample_hull()});
  ChannelParams p;
  p.P1 = 6.0;
  p.P2 = 1.5;
  series.push_back({"gvbc", gvbc_region(p, 9).hull});
  const std::string svg = overlay_svg(series);

  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(count_of(svg, "<path d=\"M") == 2);
  CHECK(count_of(svg, " Z\" fill=\"none\"") == 2);
  CHECK(svg.find("R1 (bits)") != std::string::npos);
  CHECK(svg.find("R2 (bits)") != std::string::npos);
  CHECK(svg.find(">hk</text>") != std::string::npos);
  CHECK(svg.find(">gvbc</text>") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // Two series get two distinct stroke colours.
  CHECK(svg.find("#1f77b4") != std::string::npos);
  CHECK(svg.find("#d62728") != std::string::npos);
}

TEST_CASE("overlay SVG: deterministic bytes, empty hulls skipped") {
  std::vector<RegionSeries> series;
  series.push_back({"hk", sample_hull()});
  series.push_back({"empty", Polygon2D{}});
  const std::string a = overlay_svg(series);
  const std::string b = overlay_svg(series);
  CHECK(a == b);
  CHECK(count_of(a, "<path d=\"M") == 1);
}

TEST_CASE("run report: regions, checks and timing line") {
  std::vector<RegionSeries> regions;
  regions.push_back({"hk", sample_hull()});
  std::vector<ReportCheck> checks;
  checks.push_back({"containment", Verdict::Pass, 1e-6, ""});
  checks.push_back({"intercepts", Verdict::Fail, 1e-2, "sweep=1 relay=2"});
  checks.push_back({"slopes", Verdict::Skipped, 0.0, ""});
  const std::string report = run_report(regions, checks, 1.25);

  CHECK(report.find("region hk: ") != std::string::npos);
  CHECK(report.find("intercepts r1=1.403677") != std::string::npos);
  CHECK(report.find("check containment: pass (tolerance 1e-06)") != std::string::npos);
  CHECK(report.find("check intercepts: fail (tolerance 0.01)  sweep=1 relay=2") !=
        std::string::npos);
  CHECK(report.find("check slopes: skipped") != std::string::npos);
  CHECK(report.find("wall_seconds: 1.250\n") != std::string::npos);
}
