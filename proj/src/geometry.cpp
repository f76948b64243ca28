#include "icc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "icc/gaussian_model.hpp"

namespace icc {

namespace {

// Twice the signed area of triangle (o, a, b). Positive for a left turn.
double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Slack for the inside test scaled by the edge extents so that long edges
// with O(1e-13) relative noise still count a boundary point as inside.
double turn_eps(const Point2& o, const Point2& a, const Point2& b) {
  const double d1 = std::max(std::abs(a.x - o.x), std::abs(a.y - o.y));
  const double d2 = std::max(std::abs(b.x - o.x), std::abs(b.y - o.y));
  return tol::kGeom * (1.0 + d1 * d2);
}

bool nearly_same(const Point2& a, const Point2& b) {
  return std::abs(a.x - b.x) <= tol::kGeom && std::abs(a.y - b.y) <= tol::kGeom;
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
  const double dx = p.x - (a.x + t * vx);
  const double dy = p.y - (a.y + t * vy);
  return std::hypot(dx, dy);
}

}  // namespace

Polygon2D convex_hull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::vector<Point2> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    if (!pts.empty() && nearly_same(pts.back(), p)) continue;
    pts.push_back(p);
  }
  Polygon2D out;
  if (pts.empty()) return out;
  if (pts.size() == 1) {
    out.vertices = pts;
    return out;
  }

  // Andrew's monotone chain with exact turn tests, CCW from the
  // lexicographic minimum. Popping with a tolerance here would be unsound:
  // points of a near-vertical run are traversed in x order, not geometric
  // order, so an epsilon pop can discard a far-out endpoint.
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);  // last point repeats the first

  // Float noise is merged afterwards instead: a vertex within kGeom of the
  // chord through its neighbours moves the boundary by at most kGeom when
  // dropped, so this cannot lose an extreme point and it keeps downstream
  // vertex counts stable. Near-duplicate neighbours fall out the same way.
  bool merged = true;
  while (merged && hull.size() > 2) {
    merged = false;
    for (std::size_t i = 0; i < hull.size() && hull.size() > 2;) {
      const Point2& prev = hull[(i + hull.size() - 1) % hull.size()];
      const Point2& next = hull[(i + 1) % hull.size()];
      if (point_segment_distance(hull[i], prev, next) <= tol::kGeom) {
        hull.erase(hull.begin() + static_cast<std::ptrdiff_t>(i));
        merged = true;
      } else {
        ++i;
      }
    }
  }

  // Merging can remove the original starting vertex; restore the canonical
  // rotation.
  const auto lowest = std::min_element(
      hull.begin(), hull.end(),
      [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::rotate(hull.begin(), lowest, hull.end());

  out.vertices = std::move(hull);
  return out;
}

Region2D hull_union(const Region2D& acc, const Polygon2D& poly) {
  Region2D out;
  out.polygon_count = acc.polygon_count;
  if (poly.empty()) {
    out.hull = acc.hull;
    return out;
  }
  std::vector<Point2> pts = acc.hull.vertices;
  pts.insert(pts.end(), poly.vertices.begin(), poly.vertices.end());
  out.hull = convex_hull(std::move(pts));
  out.polygon_count += 1;
  return out;
}

Region2D hull_union(const std::vector<Polygon2D>& polygons) {
  HullAccumulator acc;
  for (const auto& p : polygons) acc.add(p);
  return acc.result();
}

void HullAccumulator::add(const Polygon2D& poly) {
  if (poly.empty()) return;
  buffer_.insert(buffer_.end(), poly.vertices.begin(), poly.vertices.end());
  ++count_;
  if (buffer_.size() > hull_size_ + 4096) compact();
}

void HullAccumulator::add(const Region2D& region) {
  if (region.hull.empty()) {
    count_ += region.polygon_count;
    return;
  }
  buffer_.insert(buffer_.end(), region.hull.vertices.begin(), region.hull.vertices.end());
  count_ += region.polygon_count;
  if (buffer_.size() > hull_size_ + 4096) compact();
}

void HullAccumulator::compact() {
  buffer_ = convex_hull(std::move(buffer_)).vertices;
  hull_size_ = buffer_.size();
}

Region2D HullAccumulator::result() const {
  Region2D out;
  out.hull = convex_hull(buffer_);
  out.polygon_count = count_;
  return out;
}

double distance_to_polygon(const Polygon2D& poly, const Point2& p) {
  if (poly.empty()) return std::numeric_limits<double>::infinity();
  const auto& v = poly.vertices;
  if (v.size() == 1) return std::hypot(p.x - v[0].x, p.y - v[0].y);
  if (v.size() >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2& a = v[i];
      const Point2& b = v[(i + 1) % v.size()];
      if (cross(a, b, p) < -turn_eps(a, b, p)) {
        inside = false;
        break;
      }
    }
    if (inside) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    best = std::min(best, point_segment_distance(p, v[i], v[(i + 1) % v.size()]));
  return best;
}

bool contains(const Polygon2D& outer, const Polygon2D& inner, double tolerance) {
  if (inner.empty()) return true;
  if (outer.empty()) return false;
  for (const auto& p : inner.vertices)
    if (distance_to_polygon(outer, p) > tolerance) return false;
  return true;
}

bool contains(const Region2D& outer, const Region2D& inner, double tolerance) {
  return contains(outer.hull, inner.hull, tolerance);
}

double hausdorff(const Polygon2D& a, const Polygon2D& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("hausdorff: both polygons must be non-empty");
  // Distance to a convex set is a convex function, so the directed maximum
  // over a convex polygon is attained at one of its vertices.
  double h = 0.0;
  for (const auto& p : a.vertices) h = std::max(h, distance_to_polygon(b, p));
  for (const auto& p : b.vertices) h = std::max(h, distance_to_polygon(a, p));
  return h;
}

std::vector<double> facet_slopes(const Polygon2D& poly) {
  std::vector<double> slopes;
  if (poly.size() < 3) return slopes;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    const bool on_x_axis = std::abs(a.y) <= tol::kGeom && std::abs(b.y) <= tol::kGeom;
    const bool on_y_axis = std::abs(a.x) <= tol::kGeom && std::abs(b.x) <= tol::kGeom;
    if (on_x_axis || on_y_axis) continue;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    if (std::abs(dx) <= tol::kGeom)
      slopes.push_back(std::numeric_limits<double>::infinity());
    else
      slopes.push_back(dy / dx);
  }
  return slopes;
}

AxisIntercepts axis_intercepts(const Polygon2D& poly) {
  AxisIntercepts out{0.0, 0.0};
  for (const auto& p : poly.vertices) {
    out.r1_max = std::max(out.r1_max, p.x);
    out.r2_max = std::max(out.r2_max, p.y);
  }
  return out;
}

AxisIntercepts axis_intercepts(const Region2D& region) { return axis_intercepts(region.hull); }

}  // namespace icc
