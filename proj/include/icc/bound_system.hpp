#pragma once

#include <memory>
#include <vector>

#include "icc/channel.hpp"
#include "icc/fme.hpp"
#include "icc/gaussian_model.hpp"
#include "icc/geometry.hpp"
#include "icc/linear_system.hpp"
#include "icc/signal_model.hpp"

namespace icc {

/// The fourteen rate variables of one side's system, in the fixed order
/// used by bound_system: total rates R1,R2; user f's send rates (private,
/// common, cooperative, index) and decode rates L...; user o's rates.
[[nodiscard]] std::vector<RateVar> rate_variables(Side side);

/// The full one-side rate system over rate_variables(side): four equality
/// rows tying R1,R2 to their components, twenty-four information bounds
/// evaluated on the side's signal model, non-negativity of every variable,
/// and the four send<=decode links for user f.  The coefficient matrix is
/// the same for every model of one side; only right-hand sides move.
[[nodiscard]] LinearSystem bound_system(const ChannelParams& params, const PowerSplit& split,
                                        const DpcCoeffs& dpc, Side side);

/// One side's achievable (R1,R2) polygon: bound_system projected to
/// {R1,R2}.  Empty when the split is infeasible (never, in practice).
[[nodiscard]] Polygon2D achievable_polygon(const ChannelParams& params, const PowerSplit& split,
                                           const DpcCoeffs& dpc, Side side);

/// Repeated evaluation of one side with the elimination compiled once.
/// Copies share the compiled plan; each copy owns its model scratch, so one
/// instance per thread evaluates independently with bit-identical results.
class SideEvaluator {
public:
  SideEvaluator(const ChannelParams& params, Side side);

  [[nodiscard]] Side side() const { return side_; }
  [[nodiscard]] const ChannelParams& params() const { return params_; }

  /// (R1,R2) polygon of this side for one split and inflation choice.
  [[nodiscard]] Polygon2D polygon(const PowerSplit& split, const DpcCoeffs& dpc);

private:
  ChannelParams params_;
  Side side_;
  GaussianModel model_;
  MiEvaluator mi_;
  std::shared_ptr<const ProjectionPlan> plan_;
  std::vector<double> rhs_;
};

}  // namespace icc
