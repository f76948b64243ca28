#pragma once

#include <Eigen/Dense>

#include "icc/channel.hpp"
#include "icc/geometry.hpp"

namespace icc {

/// Transmit-covariance split for the vector broadcast bound.  S is the joint
/// input covariance (diagonal P1, P2, off-diagonal correlation), B the part
/// carrying user 1's message, D the part carrying user 2's.  Receivers see
/// the rows (1, a21) and (a12, 1) plus unit noise.
struct GvbcInput {
  Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d B = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d D = Eigen::Matrix2d::Zero();
  double a12 = 0.0;
  double a21 = 0.0;

  /// S, B, D and S - B - D must all be (numerically) PSD and the gains
  /// finite and non-negative; throws std::invalid_argument otherwise.
  void validate() const;
};

struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// The two dirty-paper encoding orders: pair1 writes user 1's signal against
/// a clean channel and user 2 decodes B as noise; pair2 the reverse.
struct GvbcPairs {
  RatePair pair1;
  RatePair pair2;
};

/// Both achievable rate pairs of one covariance split, in bits.
[[nodiscard]] GvbcPairs gvbc_pairs(const GvbcInput& input);

/// Hull of both pairs over the full-power boundary D = S - B, with
/// B = S^1/2 U diag(t1,t2) U^T S^1/2 swept over rotation angles in [0, pi),
/// t1, t2 in [0,1] and the input correlation over its admissible interval,
/// `resolution` points per parameter.
[[nodiscard]] Region2D gvbc_region(const ChannelParams& params, int resolution);

enum class RelayRole { User1Relays, User2Relays };

struct RelayCapacity {
  double bits = 0.0;
  /// False when K < 1: the value is still the max-min expression, but the
  /// degraded-channel argument behind its converse does not apply.
  bool degradedness_established = true;
};

/// Max-min single-message capacity when one transmitter dedicates all of its
/// power to relaying the other's message: golden-section over the power
/// correlation to 1e-9.
[[nodiscard]] RelayCapacity relay_capacity(const ChannelParams& params, RelayRole role);

/// Seven-bound rate polygon of one Gaussian common/private split
/// (beta_t = common fraction of user t), evaluated independently of the
/// conferencing machinery.
[[nodiscard]] Polygon2D hk_polygon(const ChannelParams& params, double beta1,
                                   double beta2);

/// Hull of hk_polygon over the (beta1, beta2) grid k/(resolution-1).
[[nodiscard]] Region2D hk_region(const ChannelParams& params, int resolution);

}  // namespace icc
