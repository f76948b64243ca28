#pragma once

#include <cstddef>
#include <vector>

namespace icc {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Convex polygon in counter-clockwise order starting at the
/// lexicographically smallest vertex.  Degenerate polygons (point, segment)
/// are allowed; an empty vertex list means the empty set.
struct Polygon2D {
  std::vector<Point2> vertices;

  [[nodiscard]] bool empty() const { return vertices.empty(); }
  [[nodiscard]] std::size_t size() const { return vertices.size(); }
};

/// Convex region accumulated from one or more polygons, described by its
/// hull together with the number of non-empty polygons merged into it.
struct Region2D {
  Polygon2D hull;
  std::size_t polygon_count = 0;
};

/// Hull of a point cloud: CCW, deterministic start, vertices within 1e-9 of
/// each other collapsed, collinear chain points dropped.
[[nodiscard]] Polygon2D convex_hull(std::vector<Point2> points);

/// Region formed by the hull of every vertex of both arguments.
[[nodiscard]] Region2D hull_union(const Region2D& a, const Polygon2D& b);

/// Hull of all vertices of all polygons.
[[nodiscard]] Region2D hull_union(const std::vector<Polygon2D>& polygons);

/// Streaming hull of many polygons; results do not depend on how the input
/// sequence is chunked, only on the set of vertices fed in.
class HullAccumulator {
public:
  void add(const Polygon2D& polygon);
  void add(const Region2D& region);
  [[nodiscard]] Region2D result() const;

private:
  void compact();

  std::vector<Point2> buffer_;
  std::size_t hull_size_ = 0;  // prefix of buffer_ already canonical
  std::size_t count_ = 0;
};

/// Every vertex of `inner` lies within `tolerance` of `outer`.
[[nodiscard]] bool contains(const Polygon2D& outer, const Polygon2D& inner, double tolerance);
[[nodiscard]] bool contains(const Region2D& outer, const Region2D& inner, double tolerance);

/// Euclidean distance from a point to a convex polygon (0 inside).
[[nodiscard]] double distance_to_polygon(const Polygon2D& polygon, const Point2& p);

/// Symmetric Hausdorff distance between two convex polygons.  Both must be
/// non-empty.
[[nodiscard]] double hausdorff(const Polygon2D& a, const Polygon2D& b);

/// Slopes dy/dx of edges that do not lie on either coordinate axis.
/// Vertical edges report +infinity.  Degenerate polygons yield {}.
[[nodiscard]] std::vector<double> facet_slopes(const Polygon2D& polygon);

struct AxisIntercepts {
  double r1_max = 0.0;
  double r2_max = 0.0;
};

/// Largest first and second coordinate over the polygon.
[[nodiscard]] AxisIntercepts axis_intercepts(const Polygon2D& polygon);
[[nodiscard]] AxisIntercepts axis_intercepts(const Region2D& region);

}  // namespace icc
