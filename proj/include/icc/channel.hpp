#pragma once

#include <vector>

namespace icc {

/// Which decoding-order variant a system describes: Z1 has user 1 running
/// dirty-paper coding against user 2's cell index, Z2 is the full index
/// swap.  The achievable region is the hull over both.
enum class Side { Z1, Z2 };

/// Standard-form channel: unit receiver noise, unit conferencing noise,
/// direct gains 1, cross gains a12 (user 1 seen at receiver 2) and a21,
/// conferencing gain K for both directions.
struct ChannelParams {
  double P1 = 1.0;
  double P2 = 1.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double K = 0.0;

  /// Throws std::invalid_argument unless P1,P2 > 0 and a12,a21,K >= 0.
  void validate() const;
};

/// One user's power fractions: private (alpha), common (beta), cooperative
/// (gamma), own cell index (theta), other-cell index relaying (mu).
struct LayerSplit {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
  double mu = 0.0;

  [[nodiscard]] double sum() const { return alpha + beta + gamma + theta + mu; }
};

struct PowerSplit {
  LayerSplit user1;
  LayerSplit user2;

  /// Throws std::invalid_argument unless each fraction is in [0,1] and each
  /// user's fractions sum to 1 within 1e-12.
  void validate() const;
};

/// Dirty-paper inflation coefficients for the side's four encoded layers.
/// Each auxiliary adds lambda times the received-amplitude-scaled known
/// index on top of its own layer.  A layer with zero power must use a zero
/// coefficient (a pure copy of the index carries infinite information and
/// is outside the Gaussian kernel's domain).
struct DpcCoeffs {
  double lambda_m = 0.0;  // private layer
  double lambda_n = 0.0;  // common layer
  double lambda_g = 0.0;  // cooperative layer
  double lambda_h = 0.0;  // own-cell-index layer
};

/// Sweep grid: simplex resolution (points per dimension, so fractions are
/// k/(resolution-1)), inflation multipliers applied to the per-layer MMSE
/// values, and which sides to union.
struct SweepConfig {
  enum class Sides { Both, Z1Only, Z2Only };

  int resolution = 9;
  std::vector<double> lambda_multipliers = {0.0, 0.5, 1.0, 1.5};
  Sides sides = Sides::Both;

  /// Throws std::invalid_argument unless resolution >= 2 and the multiplier
  /// list contains both 0 and 1 (the no-DPC and MMSE anchors).
  void validate() const;
};

}  // namespace icc
