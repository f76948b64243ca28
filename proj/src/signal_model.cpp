#include "icc/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace icc {
namespace {

constexpr int kSources = 12;
enum : int { eV1, eU1, eW1, eS1, eV2, eU2, eW2, eS2, eZ1, eZ2, eZc1, eZc2 };

const std::vector<std::string>& source_names() {
  static const std::vector<std::string> names = {"eV1", "eU1", "eW1", "eS1",
                                                 "eV2", "eU2", "eW2", "eS2",
                                                 "eZ1", "eZ2", "eZc1", "eZc2"};
  return names;
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

/// Per-layer amplitudes sqrt(fraction * power).
struct Amps {
  double v, u, w, s, m;
};

Amps amplitudes(const LayerSplit& ls, double power) {
  return {std::sqrt(ls.alpha * power), std::sqrt(ls.beta * power),
          std::sqrt(ls.gamma * power), std::sqrt(ls.theta * power),
          std::sqrt(ls.mu * power)};
}

/// Latent slots of one user's five layers: codewords, own cell index, other
/// cell index.
struct UserSlots {
  int v, u, w, own, other;
};

constexpr UserSlots kUser1{eV1, eU1, eW1, eS1, eS2};
constexpr UserSlots kUser2{eV2, eU2, eW2, eS2, eS1};

void check_fraction(double value, const char* message) {
  require(std::isfinite(value) && value >= 0.0 && value <= 1.0, message);
}

}  // namespace

void ChannelParams::validate() const {
  require(std::isfinite(P1) && P1 > 0.0, "ChannelParams: P1 must be positive");
  require(std::isfinite(P2) && P2 > 0.0, "ChannelParams: P2 must be positive");
  require(std::isfinite(a12) && a12 >= 0.0, "ChannelParams: a12 must be non-negative");
  require(std::isfinite(a21) && a21 >= 0.0, "ChannelParams: a21 must be non-negative");
  require(std::isfinite(K) && K >= 0.0, "ChannelParams: K must be non-negative");
}

void PowerSplit::validate() const {
  for (const LayerSplit* ls : {&user1, &user2}) {
    check_fraction(ls->alpha, "PowerSplit: alpha must be in [0,1]");
    check_fraction(ls->beta, "PowerSplit: beta must be in [0,1]");
    check_fraction(ls->gamma, "PowerSplit: gamma must be in [0,1]");
    check_fraction(ls->theta, "PowerSplit: theta must be in [0,1]");
    check_fraction(ls->mu, "PowerSplit: mu must be in [0,1]");
    require(std::abs(ls->sum() - 1.0) <= 1e-12, "PowerSplit: fractions must sum to 1");
  }
}

void SweepConfig::validate() const {
  require(resolution >= 2, "SweepConfig: resolution must be at least 2");
  require(!lambda_multipliers.empty(), "SweepConfig: lambda_multipliers must be non-empty");
  bool has_zero = false;
  bool has_one = false;
  for (double m : lambda_multipliers) {
    require(std::isfinite(m), "SweepConfig: lambda multipliers must be finite");
    has_zero = has_zero || std::abs(m) <= 1e-12;
    has_one = has_one || std::abs(m - 1.0) <= 1e-12;
  }
  require(has_zero && has_one, "SweepConfig: lambda_multipliers must include 0 and 1");
}

GaussianModel build_signal_model(const ChannelParams& params, const PowerSplit& split,
                                 const DpcCoeffs& dpc, Side side, RelaySigns signs) {
  GaussianModel model(source_names());
  rebuild_signal_model(model, params, split, dpc, side, signs);
  return model;
}

void rebuild_signal_model(GaussianModel& model, const ChannelParams& params,
                          const PowerSplit& split, const DpcCoeffs& dpc, Side side,
                          RelaySigns signs) {
  params.validate();
  split.validate();
  require(std::isfinite(dpc.lambda_m) && std::isfinite(dpc.lambda_n) &&
              std::isfinite(dpc.lambda_g) && std::isfinite(dpc.lambda_h),
          "DpcCoeffs: coefficients must be finite");
  require(std::abs(signs.user1) == 1.0 && std::abs(signs.user2) == 1.0,
          "RelaySigns: signs must be +1 or -1");

  const bool f_is_1 = side == Side::Z1;
  const LayerSplit& lf = f_is_1 ? split.user1 : split.user2;
  // A zero-power layer with a non-zero inflation would make the auxiliary a
  // pure copy of the known index, which carries infinite information and is
  // outside the Gaussian kernel's domain.
  require(lf.alpha > 0.0 || dpc.lambda_m == 0.0,
          "DpcCoeffs: lambda_m requires private power");
  require(lf.beta > 0.0 || dpc.lambda_n == 0.0, "DpcCoeffs: lambda_n requires common power");
  require(lf.gamma > 0.0 || dpc.lambda_g == 0.0,
          "DpcCoeffs: lambda_g requires cooperative power");
  require(lf.theta > 0.0 || dpc.lambda_h == 0.0, "DpcCoeffs: lambda_h requires index power");

  const Amps a1 = amplitudes(split.user1, params.P1);
  const Amps a2 = amplitudes(split.user2, params.P2);

  std::vector<double> row(kSources, 0.0);
  auto coef = [&row](int slot, double c) { row[slot] += c; };
  auto emit = [&model, &row](const char* id) {
    model.set_variable(id, row);
    std::fill(row.begin(), row.end(), 0.0);
  };
  auto add_user = [&coef](const UserSlots& s, const Amps& a, double gain, double relay_sign) {
    coef(s.v, gain * a.v);
    coef(s.u, gain * a.u);
    coef(s.w, gain * a.w);
    coef(s.own, gain * a.s);
    coef(s.other, gain * relay_sign * a.m);
  };

  add_user(kUser1, a1, 1.0, signs.user1);
  emit("X1");
  add_user(kUser2, a2, 1.0, signs.user2);
  emit("X2");
  add_user(kUser1, a1, 1.0, signs.user1);
  add_user(kUser2, a2, params.a21, signs.user2);
  coef(eZ1, 1.0);
  emit("Y1");
  add_user(kUser1, a1, params.a12, signs.user1);
  add_user(kUser2, a2, 1.0, signs.user2);
  coef(eZ2, 1.0);
  emit("Y2");
  add_user(kUser1, a1, params.K, signs.user1);
  coef(eZc1, 1.0);
  emit("Yc1");
  add_user(kUser2, a2, params.K, signs.user2);
  coef(eZc2, 1.0);
  emit("Yc2");

  coef(eV1, a1.v);
  coef(eU1, a1.u);
  coef(eS1, a1.s);
  emit("V1");
  coef(eV2, a2.v);
  coef(eU2, a2.u);
  coef(eS2, a2.s);
  emit("V2");
  coef(eU1, a1.u);
  emit("U1");
  coef(eU2, a2.u);
  emit("U2");
  coef(eW1, a1.w);
  emit("W1");
  coef(eW2, a2.w);
  emit("W2");
  coef(eS1, 1.0);
  emit("S1");
  coef(eS2, 1.0);
  emit("S2");

  const Amps& af = f_is_1 ? a1 : a2;
  const UserSlots& sf = f_is_1 ? kUser1 : kUser2;
  const double sr = interfering_index_amplitude(params, split, side, signs);
  coef(sf.v, af.v);
  coef(sf.other, dpc.lambda_m * sr);
  emit(f_is_1 ? "M1" : "M2");
  coef(sf.u, af.u);
  coef(sf.other, dpc.lambda_n * sr);
  emit(f_is_1 ? "N1" : "N2");
  coef(sf.w, af.w);
  coef(sf.other, dpc.lambda_g * sr);
  emit(f_is_1 ? "G1" : "G2");
  coef(sf.own, af.s);
  coef(sf.other, dpc.lambda_h * sr);
  emit(f_is_1 ? "H1" : "H2");
}

double interfering_index_amplitude(const ChannelParams& params, const PowerSplit& split,
                                   Side side, RelaySigns signs) {
  if (side == Side::Z1) {
    return signs.user1 * std::sqrt(split.user1.mu * params.P1) +
           params.a21 * std::sqrt(split.user2.theta * params.P2);
  }
  return signs.user2 * std::sqrt(split.user2.mu * params.P2) +
         params.a12 * std::sqrt(split.user1.theta * params.P1);
}

DpcCoeffs mmse_dpc(const ChannelParams& params, const PowerSplit& split, Side side,
                   RelaySigns signs) {
  const bool f_is_1 = side == Side::Z1;
  const double pf = f_is_1 ? params.P1 : params.P2;
  const double po = f_is_1 ? params.P2 : params.P1;
  const LayerSplit& lf = f_is_1 ? split.user1 : split.user2;
  const LayerSplit& lo = f_is_1 ? split.user2 : split.user1;
  const double a = f_is_1 ? params.a21 : params.a12;

  // Undecoded floor at receiver f: unit noise, the own cooperative layer
  // (decoded only through the conference) and the other user's private and
  // cooperative layers.
  const double floor = 1.0 + lf.gamma * pf + a * a * (lo.alpha + lo.gamma) * po;

  DpcCoeffs out;
  const double pm = lf.alpha * pf;
  out.lambda_m = pm / (pm + floor);
  const double pn = lf.beta * pf;
  out.lambda_n = pn / (pn + floor);
  // The cooperative layer is decoded from the conference observation, where
  // only unit noise remains after conditioning.
  const double pg = lf.gamma * pf;
  out.lambda_g = pg / (pg + 1.0);
  // The own index arrives on two paths: its own and the other user's
  // relaying path through the cross gain.  The inflation optimum for a
  // layer heard at amplitude r but inflated on its own h-scaled copy is
  // h*r/(r^2 + floor); a destructive relay sign simply makes it negative.
  const double other_sign = f_is_1 ? signs.user2 : signs.user1;
  const double h = std::sqrt(lf.theta * pf);
  const double r = h + a * other_sign * std::sqrt(lo.mu * po);
  out.lambda_h = r != 0.0 ? h * r / (r * r + floor) : 0.0;
  return out;
}

}  // namespace icc
