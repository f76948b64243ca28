#pragma once

#include <optional>
#include <vector>

#include "icc/geometry.hpp"
#include "icc/linear_system.hpp"

namespace icc {

/// Exact Fourier-Motzkin elimination of one variable.  Upper/lower row pairs
/// are combined with exact rational (integer-scaled) arithmetic; rows not
/// mentioning v pass through.  A variable absent from the system leaves it
/// unchanged.  The feasible set of the result is exactly the projection of
/// the input's feasible set.
[[nodiscard]] LinearSystem eliminate_variable(const LinearSystem& system, const RateVar& v);

/// Drops rows that repeat another row up to positive scaling (the tighter
/// right-hand side survives) and trivially true rows.  The feasible set is
/// unchanged.
[[nodiscard]] LinearSystem remove_redundant(const LinearSystem& system);

/// Eliminates vars not in `keep`, cheapest first: the next variable
/// minimises (#upper rows)x(#lower rows), ties broken lexicographically by
/// name.  Redundancy removal runs after every step.
[[nodiscard]] LinearSystem project(const LinearSystem& system, const std::vector<RateVar>& keep);

/// Intersection of the half-planes of a two-variable system as a CCW convex
/// polygon (vars[0] on the x axis).  Collinear vertices are merged at 1e-9.
/// Returns nullopt for an empty feasible set; throws std::domain_error if
/// the region is unbounded (a missing bound upstream).
[[nodiscard]] std::optional<Polygon2D> polygon_from_system(const LinearSystem& system);

/// Elimination compiled once for a fixed coefficient matrix, replayable for
/// many right-hand sides.  Which rows get combined, scaled, or merged in
/// Fourier-Motzkin depends only on the coefficients, so the whole pipeline
/// is recorded as a small evaluation graph (inputs, scaled sums, mins) plus
/// feasibility probes for rows whose coefficients cancel entirely.  Replay
/// is a linear pass over that graph: orders of magnitude cheaper than
/// re-eliminating, and bit-identical across threads.
class ProjectionPlan {
public:
  /// Compiles the elimination of every variable outside `keep`.  Only the
  /// coefficients of `structure` matter; its right-hand sides are ignored.
  ProjectionPlan(const LinearSystem& structure, std::vector<RateVar> keep);

  /// Number of right-hand-side entries expected by the replay calls.
  [[nodiscard]] std::size_t input_rows() const { return input_rows_; }

  /// Replays the elimination for one right-hand-side vector, producing the
  /// reduced system over `keep` (contradictory flag set when a feasibility
  /// probe fails).
  [[nodiscard]] LinearSystem reduced(const std::vector<double>& rhs) const;

  /// Replays and intersects directly into a polygon.  Requires a
  /// two-variable keep list (keep[0] on the x axis).  nullopt means empty.
  [[nodiscard]] std::optional<Polygon2D> polygon(const std::vector<double>& rhs) const;

private:
  struct Node {
    std::int8_t kind;  // 0 input, 1 scaled sum of two nodes, 2 min of two
    std::int32_t a = 0;
    std::int32_t b = 0;
    double fa = 0.0;
    double fb = 0.0;
  };

  void evaluate(const std::vector<double>& rhs, std::vector<double>& values) const;

  std::vector<RateVar> keep_;
  std::vector<Node> nodes_;
  std::vector<std::int32_t> feasibility_;  // node values that must stay >= -1e-9
  std::vector<std::int32_t> row_nodes_;    // rhs node of each reduced row
  std::vector<double> row_coeffs_;         // reduced rows, keep_.size() columns
  std::size_t input_rows_ = 0;
  bool always_empty_ = false;
};

}  // namespace icc
