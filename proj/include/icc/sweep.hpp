#pragma once

#include <cstddef>
#include <vector>

#include "icc/bound_system.hpp"
#include "icc/channel.hpp"
#include "icc/geometry.hpp"

namespace icc {

/// One grid point worth remembering: where a per-axis record was attained.
struct SweepRecord {
  double value = -1.0;
  Side side = Side::Z1;
  PowerSplit split;
  double multiplier = 0.0;
};

/// Counters and records collected while sweeping.
struct SweepAudit {
  std::size_t polygons = 0;
  std::size_t empty_polygons = 0;
  std::size_t slope_violations = 0;
  SweepRecord best_r1;
  SweepRecord best_r2;
};

/// All five-part power splits with fractions k/(resolution-1), enumerated
/// lexicographically.  resolution >= 2; size C(resolution+3, 4).
[[nodiscard]] std::vector<LayerSplit> simplex_grid(int resolution);

/// Edges of the polygon whose slope is outside the admissible boundary set
/// {0, -1/2, -1, -2, vertical}.  Axis-lying edges are not counted.
[[nodiscard]] std::size_t slope_violations(const Polygon2D& polygon,
                                           double tolerance = tol::kSlope);

/// Hull of the one-side polygons over the full split grid, the inflation
/// multiplier grid and the selected sides.  Work is split into fixed tasks
/// merged in task order, so the result does not depend on the thread count.
[[nodiscard]] Region2D sweep_region(const ChannelParams& params, const SweepConfig& cfg,
                                    SweepAudit* audit = nullptr);

/// Single-threaded reference of sweep_region: identical task decomposition
/// and merge order, no worker threads.  Exists to pin down the parallel
/// kernel in tests and benchmarks.
[[nodiscard]] Region2D sweep_region_serial(const ChannelParams& params,
                                           const SweepConfig& cfg,
                                           SweepAudit* audit = nullptr);

/// Sweep restricted to private/common splits (no cooperative or index
/// power) with zero inflation: cfg.resolution points per user on the
/// alpha+beta=1 line.
[[nodiscard]] Region2D zero_cooperation_region(const ChannelParams& params,
                                               const SweepConfig& cfg,
                                               SweepAudit* audit = nullptr);

/// Index-only splits (theta+mu=1 per user) evaluated through the reduced
/// per-side rectangle bounds: the dirty-paper user's net index rate and the
/// other receiver's index rate.  cfg.resolution points per user axis.
[[nodiscard]] Region2D ideal_conferencing_region(const ChannelParams& params,
                                                 const SweepConfig& cfg,
                                                 SweepAudit* audit = nullptr);

/// Pushes the two per-axis records of a finished sweep by coordinate
/// descent over the split fractions and the inflation multiplier: pairwise
/// mass transfers with a shrinking step, best-improvement accepted, a fixed
/// number of rounds.  Returns intercepts at least as large as the records.
[[nodiscard]] AxisIntercepts polished_intercepts(const ChannelParams& params,
                                                 const SweepAudit& audit);

}  // namespace icc
