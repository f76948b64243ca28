#pragma once

#include "icc/channel.hpp"
#include "icc/gaussian_model.hpp"

namespace icc {

/// Builds the jointly Gaussian description of one side of the conferencing
/// interference channel.  Twelve independent unit sources: one codeword per
/// layer and user (eV1,eU1,eW1,eS1 and the user-2 set), two receiver noises
/// (eZ1,eZ2), two conferencing noises (eZc1,eZc2).
///
/// Sign of each user's relayed-index amplitude.  The power constraint only
/// binds the square, so a transmitter may put its relaying coefficient on
/// either side of zero; a negative sign lets the relayed codeword combine
/// destructively at the unintended receiver.  The general sweep keeps both
/// positive (coherent boost at the intended receiver); the ideal
/// conferencing sweep needs all four combinations to cover broadcast-style
/// interference nulling.
struct RelaySigns {
  double user1 = 1.0;
  double user2 = 1.0;
};

/// Variables defined, with f the dirty-paper user of `side` and o the other:
///   X1,X2        transmitted signals (variance exactly P1,P2)
///   Y1,Y2        receiver observations
///   Yc1,Yc2      conferencing observations of X1 resp. X2
///   V1,V2        private+common+own-index composites
///   U1,U2        common layers, W1,W2 cooperative layers (transmit scale)
///   S1,S2        cell-index codewords (unit scale)
///   Mf,Nf,Gf,Hf  dirty-paper auxiliaries of user f against index So,
///                inflated by dpc.lambda_* times the amplitude at which So
///                arrives at receiver f
GaussianModel build_signal_model(const ChannelParams& params, const PowerSplit& split,
                                 const DpcCoeffs& dpc, Side side, RelaySigns signs = {});

/// Same, writing into an existing model with identical source layout so the
/// sweep loop does not reallocate.  `model` must come from a previous
/// build_signal_model call with the same side.
void rebuild_signal_model(GaussianModel& model, const ChannelParams& params,
                          const PowerSplit& split, const DpcCoeffs& dpc, Side side,
                          RelaySigns signs = {});

/// Amplitude at which the other cell's index codeword So arrives at
/// receiver f: the relayed path plus the other transmitter's own-index path
/// through the cross gain.
[[nodiscard]] double interfering_index_amplitude(const ChannelParams& params,
                                                 const PowerSplit& split, Side side,
                                                 RelaySigns signs = {});

/// Minimum-mean-square-error inflation coefficients for the four encoded
/// layers of user f.  Each layer treats the other layers decoded after it
/// as noise; the residual noise floor at receiver f is
/// 1 + gamma_f P_f + a^2 (alpha_o + gamma_o) P_o.  A zero-power layer gets
/// a zero coefficient, keeping the model inside the Gaussian kernel's
/// domain.
[[nodiscard]] DpcCoeffs mmse_dpc(const ChannelParams& params, const PowerSplit& split,
                                 Side side, RelaySigns signs = {});

}  // namespace icc
