#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "icc/gaussian_model.hpp"
#include "icc/signal_model.hpp"

using namespace icc;

namespace {

ChannelParams reference_params() {
  ChannelParams p;
  p.P1 = 6.0;
  p.P2 = 1.5;
  p.a12 = 0.74;
  p.a21 = 0.43;
  p.K = 4.0;
  return p;
}

PowerSplit interior_split() {
  PowerSplit s;
  s.user1 = {0.3, 0.2, 0.1, 0.25, 0.15};
  s.user2 = {0.25, 0.25, 0.2, 0.2, 0.1};
  return s;
}

LayerSplit random_layer_split(std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double parts[5];
  double total = 0.0;
  for (double& p : parts) {
    p = unif(rng);
    total += p;
  }
  LayerSplit ls{parts[0] / total, parts[1] / total, parts[2] / total, parts[3] / total,
                parts[4] / total};
  return ls;
}

double variance(const GaussianModel& model, const VariableId& id) {
  return build_covariance(model, {id})(0, 0);
}

double coefficient_on(const GaussianModel& model, const VariableId& id,
                      const std::string& source) {
  const auto& sources = model.sources();
  for (std::size_t k = 0; k < sources.size(); ++k) {
    if (sources[k] == source) return model.coefficients(id)[k];
  }
  FAIL("unknown source " << source);
  return 0.0;
}

}  // namespace

TEST_CASE("transmit variances equal the power budgets exactly") {
  std::mt19937 rng(20260815);
  for (int trial = 0; trial < 50; ++trial) {
    ChannelParams p = reference_params();
    PowerSplit s;
    s.user1 = random_layer_split(rng);
    s.user2 = random_layer_split(rng);
    GaussianModel m = build_signal_model(p, s, mmse_dpc(p, s, Side::Z1), Side::Z1);
    CHECK(variance(m, "X1") == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(variance(m, "X2") == doctest::Approx(1.5).epsilon(1e-12));
  }
}

TEST_CASE("receiver rows combine both users through the cross gains") {
  ChannelParams p = reference_params();
  PowerSplit s = interior_split();
  GaussianModel m = build_signal_model(p, s, DpcCoeffs{}, Side::Z1);

  // The own-cell index reaches receiver 1 on its own path plus the other
  // user's relaying path scaled by the cross gain.
  const double own = std::sqrt(0.25 * 6.0) + 0.43 * std::sqrt(0.1 * 1.5);
  CHECK(coefficient_on(m, "Y1", "eS1") == doctest::Approx(own).epsilon(1e-15));
  const double other = std::sqrt(0.15 * 6.0) + 0.43 * std::sqrt(0.2 * 1.5);
  CHECK(coefficient_on(m, "Y1", "eS2") == doctest::Approx(other).epsilon(1e-15));
  CHECK(interfering_index_amplitude(p, s, Side::Z1) == doctest::Approx(other).epsilon(1e-15));
  CHECK(coefficient_on(m, "Y1", "eZ1") == 1.0);
  CHECK(coefficient_on(m, "Y1", "eZ2") == 0.0);
  CHECK(coefficient_on(m, "Y2", "eV1") ==
        doctest::Approx(0.74 * std::sqrt(0.3 * 6.0)).epsilon(1e-15));
  CHECK(coefficient_on(m, "Yc1", "eV1") ==
        doctest::Approx(4.0 * std::sqrt(0.3 * 6.0)).epsilon(1e-15));
  CHECK(coefficient_on(m, "Yc1", "eZc1") == 1.0);
  CHECK(variance(m, "Yc2") == doctest::Approx(16.0 * 1.5 + 1.0).epsilon(1e-12));
}

TEST_CASE("auxiliaries stack the layer codeword on the inflated index") {
  ChannelParams p = reference_params();
  PowerSplit s = interior_split();
  DpcCoeffs dpc{0.4, 0.3, 0.2, 0.1};
  GaussianModel m = build_signal_model(p, s, dpc, Side::Z1);
  const double sr = interfering_index_amplitude(p, s, Side::Z1);

  CHECK(coefficient_on(m, "M1", "eV1") == doctest::Approx(std::sqrt(1.8)).epsilon(1e-15));
  CHECK(coefficient_on(m, "M1", "eS2") == doctest::Approx(0.4 * sr).epsilon(1e-15));
  CHECK(coefficient_on(m, "N1", "eU1") == doctest::Approx(std::sqrt(1.2)).epsilon(1e-15));
  CHECK(coefficient_on(m, "N1", "eS2") == doctest::Approx(0.3 * sr).epsilon(1e-15));
  CHECK(coefficient_on(m, "G1", "eW1") == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
  CHECK(coefficient_on(m, "H1", "eS1") == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
  CHECK(coefficient_on(m, "H1", "eS2") == doctest::Approx(0.1 * sr).epsilon(1e-15));
  // The codeword variables carry the transmit scale; the index itself is a
  // unit codeword whose amplitudes live in the receiver rows.
  CHECK(variance(m, "U2") == doctest::Approx(0.25 * 1.5).epsilon(1e-12));
  CHECK(variance(m, "V2") == doctest::Approx(0.7 * 1.5).epsilon(1e-12));
  CHECK(variance(m, "S2") == 1.0);
  CHECK(variance(m, "S1") == 1.0);
}

TEST_CASE("side Z2 mirrors side Z1 under the full swap") {
  ChannelParams p = reference_params();
  ChannelParams q;
  q.P1 = p.P2;
  q.P2 = p.P1;
  q.a12 = p.a21;
  q.a21 = p.a12;
  q.K = p.K;
  PowerSplit s = interior_split();
  PowerSplit t;
  t.user1 = s.user2;
  t.user2 = s.user1;
  DpcCoeffs dpc{0.4, 0.3, 0.2, 0.1};

  GaussianModel a = build_signal_model(p, s, dpc, Side::Z1);
  GaussianModel b = build_signal_model(q, t, dpc, Side::Z2);
  const std::vector<std::pair<VariableId, VariableId>> pairs = {
      {"X1", "X2"}, {"Y1", "Y2"}, {"Yc1", "Yc2"}, {"M1", "M2"},
      {"N1", "N2"}, {"G1", "G2"}, {"H1", "H2"},   {"V2", "V1"}};
  for (const auto& [va, vb] : pairs) {
    CHECK(variance(a, va) == doctest::Approx(variance(b, vb)).epsilon(1e-12));
  }
  CHECK(mutual_information(a, {"Y1"}, {"M1", "H1"}) ==
        doctest::Approx(mutual_information(b, {"Y2"}, {"M2", "H2"})).epsilon(1e-12));
  CHECK(mutual_information(a, {"Y2", "S2"}, {"V2", "U2"}) ==
        doctest::Approx(mutual_information(b, {"Y1", "S1"}, {"V1", "U1"})).epsilon(1e-12));
}

TEST_CASE("index-layer inflation at the closed-form optimum achieves the clean-channel rate") {
  // Single coded layer against a known interfering index: user 1 spends all
  // power on its own index, user 2 splits between its index (interference
  // at receiver 1) and relaying (coherent gain for user 1).
  ChannelParams p;
  p.P1 = 6.0;
  p.P2 = 1.5;
  p.a12 = 0.74;
  p.a21 = 0.43;
  p.K = 4.0;
  PowerSplit s;
  s.user1 = {0.0, 0.0, 0.0, 1.0, 0.0};
  s.user2 = {0.0, 0.0, 0.0, 0.5, 0.5};

  const DpcCoeffs star = mmse_dpc(p, s, Side::Z1);
  const double h = std::sqrt(6.0);
  const double r = h + 0.43 * std::sqrt(0.5 * 1.5);
  CHECK(star.lambda_m == 0.0);
  CHECK(star.lambda_n == 0.0);
  CHECK(star.lambda_g == 0.0);
  CHECK(star.lambda_h == doctest::Approx(h * r / (r * r + 1.0)).epsilon(1e-15));

  auto net_rate = [&](double lambda_h) {
    DpcCoeffs d;
    d.lambda_h = lambda_h;
    GaussianModel m = build_signal_model(p, s, d, Side::Z1);
    return mutual_information(m, {"Y1"}, {"H1"}) - mutual_information(m, {"H1"}, {"S2"});
  };

  // The optimum removes the known interference entirely: the net rate hits
  // the interference-free capacity of the coherently combined index path.
  const double best = net_rate(star.lambda_h);
  CHECK(best == doctest::Approx(0.5 * std::log2(1.0 + r * r)).epsilon(1e-12));
  for (int i = 0; i <= 40; ++i) {
    CHECK(net_rate(0.05 * i) <= best + 1e-12);
  }
}

TEST_CASE("inflation coefficients follow the power-over-power-plus-floor rule") {
  ChannelParams p = reference_params();
  PowerSplit s = interior_split();
  const double floor1 = 1.0 + 0.1 * 6.0 + 0.43 * 0.43 * (0.25 + 0.2) * 1.5;
  DpcCoeffs d = mmse_dpc(p, s, Side::Z1);
  CHECK(d.lambda_m == doctest::Approx(1.8 / (1.8 + floor1)).epsilon(1e-15));
  CHECK(d.lambda_n == doctest::Approx(1.2 / (1.2 + floor1)).epsilon(1e-15));
  CHECK(d.lambda_g == doctest::Approx(0.6 / 1.6).epsilon(1e-15));
  const double h = std::sqrt(0.25 * 6.0);
  const double r = h + 0.43 * std::sqrt(0.1 * 1.5);
  CHECK(d.lambda_h == doctest::Approx(h * r / (r * r + floor1)).epsilon(1e-15));

  // Zero-power layers always get zero inflation, keeping every auxiliary a
  // real signal rather than a copy of the known index.
  PowerSplit z;
  z.user1 = {0.0, 1.0, 0.0, 0.0, 0.0};
  z.user2 = {0.5, 0.0, 0.0, 0.0, 0.5};
  DpcCoeffs dz = mmse_dpc(p, z, Side::Z1);
  CHECK(dz.lambda_m == 0.0);
  CHECK(dz.lambda_g == 0.0);
  CHECK(dz.lambda_h == 0.0);
  CHECK(dz.lambda_n > 0.0);
}

TEST_CASE("invalid parameters are rejected") {
  ChannelParams p = reference_params();
  PowerSplit s = interior_split();

  ChannelParams bad = p;
  bad.P1 = 0.0;
  CHECK_THROWS_AS(build_signal_model(bad, s, DpcCoeffs{}, Side::Z1), std::invalid_argument);
  bad = p;
  bad.a21 = -0.1;
  CHECK_THROWS_AS(build_signal_model(bad, s, DpcCoeffs{}, Side::Z1), std::invalid_argument);
  bad = p;
  bad.K = std::nan("");
  CHECK_THROWS_AS(build_signal_model(bad, s, DpcCoeffs{}, Side::Z1), std::invalid_argument);

  PowerSplit off = s;
  off.user1.alpha += 1e-6;
  CHECK_THROWS_AS(build_signal_model(p, off, DpcCoeffs{}, Side::Z1), std::invalid_argument);
  off = s;
  off.user2.beta = -0.25;
  CHECK_THROWS_AS(build_signal_model(p, off, DpcCoeffs{}, Side::Z1), std::invalid_argument);

  DpcCoeffs nan_dpc;
  nan_dpc.lambda_h = std::nan("");
  CHECK_THROWS_AS(build_signal_model(p, s, nan_dpc, Side::Z1), std::invalid_argument);

  // Inflating a layer that carries no power is outside the model's domain.
  PowerSplit zero_theta = s;
  zero_theta.user1 = {0.5, 0.2, 0.1, 0.0, 0.2};
  DpcCoeffs inflate_h;
  inflate_h.lambda_h = 0.3;
  CHECK_THROWS_AS(build_signal_model(p, zero_theta, inflate_h, Side::Z1),
                  std::invalid_argument);
}

TEST_CASE("rebuilding in place matches a fresh build") {
  ChannelParams p = reference_params();
  GaussianModel m = build_signal_model(p, interior_split(), DpcCoeffs{}, Side::Z2);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    PowerSplit s;
    s.user1 = random_layer_split(rng);
    s.user2 = random_layer_split(rng);
    DpcCoeffs d = mmse_dpc(p, s, Side::Z2);
    rebuild_signal_model(m, p, s, d, Side::Z2);
    GaussianModel fresh = build_signal_model(p, s, d, Side::Z2);
    for (const auto& id : fresh.variable_ids()) {
      const auto& a = m.coefficients(id);
      const auto& b = fresh.coefficients(id);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
    }
  }
}

TEST_CASE("a negative relay sign flips only the relayed-index coefficients") {
  ChannelParams p = reference_params();
  PowerSplit s = interior_split();
  const DpcCoeffs d;
  GaussianModel plus = build_signal_model(p, s, d, Side::Z1);
  GaussianModel minus = build_signal_model(p, s, d, Side::Z1, {-1.0, 1.0});

  // eS2 (slot 7) is user 1's relayed slot: wherever X1 enters, that slot
  // loses twice the relayed amplitude times the path gain.  Receiver slots
  // also carry user 2's own-index path, which must not move.
  const double relay = std::sqrt(s.user1.mu * p.P1);
  const auto& ids = plus.variable_ids();
  for (const auto& id : ids) {
    const auto& a = plus.coefficients(id);
    const auto& b = minus.coefficients(id);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      double gain = 0.0;
      if (id == "X1" || id == "Y1") gain = 1.0;
      if (id == "Y2") gain = p.a12;
      if (id == "Yc1") gain = p.K;
      if (k == 7 && gain != 0.0) {
        CHECK(b[k] == doctest::Approx(a[k] - 2.0 * gain * relay).epsilon(1e-15));
      } else {
        CHECK(b[k] == a[k]);
      }
    }
  }

  // Power is sign-blind.
  const auto cov_p = build_covariance(plus, {"X1"});
  const auto cov_m = build_covariance(minus, {"X1"});
  CHECK(cov_p(0, 0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(cov_m(0, 0) == doctest::Approx(6.0).epsilon(1e-15));

  // The interference amplitude and the index inflation follow the sign.
  const double mu_amp = std::sqrt(s.user1.mu * p.P1);
  const double th_amp = p.a21 * std::sqrt(s.user2.theta * p.P2);
  CHECK(interfering_index_amplitude(p, s, Side::Z1) ==
        doctest::Approx(mu_amp + th_amp).epsilon(1e-15));
  CHECK(interfering_index_amplitude(p, s, Side::Z1, {-1.0, 1.0}) ==
        doctest::Approx(-mu_amp + th_amp).epsilon(1e-15));

  const double floor1 = 1.0 + 0.1 * 6.0 + 0.43 * 0.43 * (0.25 + 0.2) * 1.5;
  const double h = std::sqrt(s.user1.theta * p.P1);
  const double r = h - p.a21 * std::sqrt(s.user2.mu * p.P2);
  const DpcCoeffs flipped = mmse_dpc(p, s, Side::Z1, {1.0, -1.0});
  CHECK(flipped.lambda_h == doctest::Approx(h * r / (r * r + floor1)).epsilon(1e-14));

  CHECK_THROWS_AS(build_signal_model(p, s, d, Side::Z1, {0.5, 1.0}), std::invalid_argument);
}
