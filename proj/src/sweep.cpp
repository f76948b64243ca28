#include "icc/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>

#include "icc/signal_model.hpp"

namespace icc {
namespace {

std::vector<Side> selected_sides(SweepConfig::Sides sides) {
  switch (sides) {
    case SweepConfig::Sides::Z1Only: return {Side::Z1};
    case SweepConfig::Sides::Z2Only: return {Side::Z2};
    default: return {Side::Z1, Side::Z2};
  }
}

DpcCoeffs scaled(const DpcCoeffs& star, double m) {
  return {star.lambda_m * m, star.lambda_n * m, star.lambda_g * m, star.lambda_h * m};
}

void consider(SweepRecord& rec, double value, Side side, const PowerSplit& split,
              double mult) {
  if (value > rec.value) rec = {value, side, split, mult};
}

void merge_audit(SweepAudit& into, const SweepAudit& part) {
  into.polygons += part.polygons;
  into.empty_polygons += part.empty_polygons;
  into.slope_violations += part.slope_violations;
  if (part.best_r1.value > into.best_r1.value) into.best_r1 = part.best_r1;
  if (part.best_r2.value > into.best_r2.value) into.best_r2 = part.best_r2;
}

struct TaskResult {
  Region2D hull;
  SweepAudit audit;
};

/// Grid1 x grid2 x multipliers on the selected sides.  One task per
/// (side, user-1 split); tasks run in any order but merge by index, so the
/// hull and the audit never depend on the thread count.
Region2D pair_sweep(const ChannelParams& params, const std::vector<Side>& sides,
                    const std::vector<LayerSplit>& grid1,
                    const std::vector<LayerSplit>& grid2,
                    const std::vector<double>& multipliers, bool parallel,
                    SweepAudit* audit) {
  std::array<std::optional<SideEvaluator>, 2> master;
  for (Side s : sides) master[s == Side::Z1 ? 0 : 1].emplace(params, s);

  const std::ptrdiff_t tasks =
      static_cast<std::ptrdiff_t>(sides.size() * grid1.size());
  std::vector<TaskResult> results(tasks);

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t t = 0; t < tasks; ++t) {
    const Side side = sides[static_cast<std::size_t>(t) / grid1.size()];
    SideEvaluator ev = *master[side == Side::Z1 ? 0 : 1];
    TaskResult r;
    HullAccumulator acc;
    PowerSplit split;
    split.user1 = grid1[static_cast<std::size_t>(t) % grid1.size()];
    for (const LayerSplit& l2 : grid2) {
      split.user2 = l2;
      const DpcCoeffs star = mmse_dpc(params, split, side);
      for (double m : multipliers) {
        Polygon2D poly = ev.polygon(split, scaled(star, m));
        if (poly.empty()) {
          ++r.audit.empty_polygons;
          continue;
        }
        ++r.audit.polygons;
        r.audit.slope_violations += slope_violations(poly);
        const AxisIntercepts ai = axis_intercepts(poly);
        consider(r.audit.best_r1, ai.r1_max, side, split, m);
        consider(r.audit.best_r2, ai.r2_max, side, split, m);
        acc.add(poly);
      }
    }
    r.hull = acc.result();
    results[t] = std::move(r);
  }

  HullAccumulator total;
  SweepAudit merged;
  for (const TaskResult& r : results) {
    total.add(r.hull);
    merge_audit(merged, r.audit);
  }
  if (audit) *audit = merged;
  return total.result();
}

Region2D run_sweep(const ChannelParams& params, const SweepConfig& cfg, SweepAudit* audit,
                   bool parallel) {
  params.validate();
  cfg.validate();
  const std::vector<LayerSplit> grid = simplex_grid(cfg.resolution);
  return pair_sweep(params, selected_sides(cfg.sides), grid, grid,
                    cfg.lambda_multipliers, parallel, audit);
}

std::vector<LayerSplit> two_layer_line(int resolution, bool index_layers) {
  const int n = resolution - 1;
  std::vector<LayerSplit> line;
  line.reserve(resolution);
  for (int k = 0; k <= n; ++k) {
    const double second = static_cast<double>(k) / n;
    const double first = 1.0 - second;
    if (index_layers) {
      line.push_back({0.0, 0.0, 0.0, first, second});
    } else {
      line.push_back({first, second, 0.0, 0.0, 0.0});
    }
  }
  return line;
}

}  // namespace

std::vector<LayerSplit> simplex_grid(int resolution) {
  if (resolution < 2) {
    throw std::invalid_argument("simplex_grid: resolution must be at least 2");
  }
  const int n = resolution - 1;
  std::vector<LayerSplit> out;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; a + b <= n; ++b) {
      for (int c = 0; a + b + c <= n; ++c) {
        for (int d = 0; a + b + c + d <= n; ++d) {
          const int e = n - a - b - c - d;
          out.push_back({static_cast<double>(a) / n, static_cast<double>(b) / n,
                         static_cast<double>(c) / n, static_cast<double>(d) / n,
                         static_cast<double>(e) / n});
        }
      }
    }
  }
  return out;
}

std::size_t slope_violations(const Polygon2D& polygon, double tolerance) {
  static constexpr double kAdmissible[] = {0.0, -0.5, -1.0, -2.0};
  std::size_t count = 0;
  for (double s : facet_slopes(polygon)) {
    if (std::isinf(s)) continue;
    bool ok = false;
    for (double m : kAdmissible) ok = ok || std::abs(s - m) <= tolerance;
    if (!ok) ++count;
  }
  return count;
}

Region2D sweep_region(const ChannelParams& params, const SweepConfig& cfg,
                      SweepAudit* audit) {
  return run_sweep(params, cfg, audit, true);
}

Region2D sweep_region_serial(const ChannelParams& params, const SweepConfig& cfg,
                             SweepAudit* audit) {
  return run_sweep(params, cfg, audit, false);
}

Region2D zero_cooperation_region(const ChannelParams& params, const SweepConfig& cfg,
                                 SweepAudit* audit) {
  params.validate();
  cfg.validate();
  const std::vector<LayerSplit> line = two_layer_line(cfg.resolution, false);
  return pair_sweep(params, selected_sides(cfg.sides), line, line, {0.0}, true, audit);
}

Region2D ideal_conferencing_region(const ChannelParams& params, const SweepConfig& cfg,
                                   SweepAudit* audit) {
  params.validate();
  cfg.validate();
  const std::vector<LayerSplit> line = two_layer_line(cfg.resolution, true);
  // Unlike the general sweep, the relayed amplitudes take both signs here:
  // reaching broadcast-style boundary points needs a message nulled at the
  // unintended receiver, which two constructive relay paths can never do.
  constexpr std::array<RelaySigns, 4> kSigns = {
      RelaySigns{1.0, 1.0}, RelaySigns{1.0, -1.0}, RelaySigns{-1.0, 1.0},
      RelaySigns{-1.0, -1.0}};
  HullAccumulator acc;
  SweepAudit merged;
  for (Side side : selected_sides(cfg.sides)) {
    PowerSplit split;
    for (const LayerSplit& l1 : line) {
      split.user1 = l1;
      for (const LayerSplit& l2 : line) {
        split.user2 = l2;
        for (const RelaySigns& signs : kSigns) {
          const DpcCoeffs star = mmse_dpc(params, split, side, signs);
          for (double m : cfg.lambda_multipliers) {
            GaussianModel model =
                build_signal_model(params, split, scaled(star, m), side, signs);
            double r1, r2;
            if (side == Side::Z1) {
              r1 = mutual_information(model, {"Y1"}, {"H1"}) -
                   mutual_information(model, {"H1"}, {"S2"});
              r2 = mutual_information(model, {"Y2"}, {"S2"});
            } else {
              r1 = mutual_information(model, {"Y1"}, {"S1"});
              r2 = mutual_information(model, {"Y2"}, {"H2"}) -
                   mutual_information(model, {"H2"}, {"S1"});
            }
            r1 = std::max(0.0, r1);
            r2 = std::max(0.0, r2);
            Polygon2D rect = convex_hull({{0.0, 0.0}, {r1, 0.0}, {r1, r2}, {0.0, r2}});
            ++merged.polygons;
            merged.slope_violations += slope_violations(rect);
            consider(merged.best_r1, r1, side, split, m);
            consider(merged.best_r2, r2, side, split, m);
            acc.add(rect);
          }
        }
      }
    }
  }
  if (audit) *audit = merged;
  return acc.result();
}

namespace {

std::array<double, 5> to_array(const LayerSplit& l) {
  return {l.alpha, l.beta, l.gamma, l.theta, l.mu};
}

LayerSplit from_array(const std::array<double, 5>& a) {
  return {a[0], a[1], a[2], a[3], a[4]};
}

/// Moves `step` of mass from fraction i to fraction j of one user, then
/// renormalises.  Exact zeros stay exact so the inflation discipline holds.
PowerSplit transfer(const PowerSplit& split, int user, int i, int j, double step) {
  std::array<double, 5> a = to_array(user == 0 ? split.user1 : split.user2);
  const double moved = std::min(step, a[i]);
  a[i] -= moved;
  a[j] += moved;
  double total = 0.0;
  for (double v : a) total += v;
  for (double& v : a) v /= total;
  PowerSplit out = split;
  (user == 0 ? out.user1 : out.user2) = from_array(a);
  return out;
}

}  // namespace

AxisIntercepts polished_intercepts(const ChannelParams& params, const SweepAudit& audit) {
  AxisIntercepts out{std::max(0.0, audit.best_r1.value), std::max(0.0, audit.best_r2.value)};
  for (int axis = 0; axis < 2; ++axis) {
    const SweepRecord& rec = axis == 0 ? audit.best_r1 : audit.best_r2;
    if (rec.value < 0.0) continue;
    SideEvaluator ev(params, rec.side);
    auto value = [&](const PowerSplit& s, double m) {
      const Polygon2D poly = ev.polygon(s, scaled(mmse_dpc(params, s, rec.side), m));
      if (poly.empty()) return -1.0;
      const AxisIntercepts ai = axis_intercepts(poly);
      return axis == 0 ? ai.r1_max : ai.r2_max;
    };

    PowerSplit split = rec.split;
    double mult = rec.multiplier;
    double best = value(split, mult);
    double step = 0.25;
    for (int round = 0; round < 20; ++round) {
      double cand_best = best;
      PowerSplit cand_split = split;
      double cand_mult = mult;
      for (int user = 0; user < 2; ++user) {
        for (int i = 0; i < 5; ++i) {
          for (int j = 0; j < 5; ++j) {
            if (i == j) continue;
            PowerSplit s = transfer(split, user, i, j, step);
            const double v = value(s, mult);
            if (v > cand_best) {
              cand_best = v;
              cand_split = s;
              cand_mult = mult;
            }
          }
        }
      }
      for (double m : {mult + step, std::max(0.0, mult - step)}) {
        const double v = value(split, m);
        if (v > cand_best) {
          cand_best = v;
          cand_split = split;
          cand_mult = m;
        }
      }
      if (cand_best > best) {
        best = cand_best;
        split = cand_split;
        mult = cand_mult;
      } else {
        step *= 0.5;
      }
    }
    (axis == 0 ? out.r1_max : out.r2_max) = std::max(best, axis == 0 ? out.r1_max : out.r2_max);
  }
  return out;
}

}  // namespace icc
