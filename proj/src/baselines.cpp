#include "icc/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "icc/fme.hpp"
#include "icc/gaussian_model.hpp"
#include "icc/linear_system.hpp"

namespace icc {
namespace {

void require_psd(const Eigen::Matrix2d& m, const char* what) {
  if (std::abs(m(0, 1) - m(1, 0)) > tol::kGeom) {
    throw std::invalid_argument(std::string("GvbcInput: ") + what + " is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::kGeom) {
    throw std::invalid_argument(std::string("GvbcInput: ") + what +
                                " is not positive semi-definite");
  }
}

double received(double h1, double h2, const Eigen::Matrix2d& m) {
  const Eigen::RowVector2d h(h1, h2);
  return (h * m * h.transpose()).value();
}

}  // namespace

void GvbcInput::validate() const {
  for (double g : {a12, a21}) {
    if (!std::isfinite(g) || g < 0.0) {
      throw std::invalid_argument("GvbcInput: cross gains must be finite and >= 0");
    }
  }
  require_psd(S, "S");
  require_psd(B, "B");
  require_psd(D, "D");
  require_psd(S - B - D, "S - B - D");
}

GvbcPairs gvbc_pairs(const GvbcInput& input) {
  input.validate();
  const Eigen::Matrix2d total = input.B + input.D;
  auto at_y1 = [&](const Eigen::Matrix2d& m) { return received(1.0, input.a21, m); };
  auto at_y2 = [&](const Eigen::Matrix2d& m) { return received(input.a12, 1.0, m); };

  GvbcPairs out;
  out.pair1.r1 = 0.5 * std::log2(at_y1(input.B) + 1.0);
  out.pair1.r2 = 0.5 * std::log2((at_y2(total) + 1.0) / (at_y2(input.B) + 1.0));
  out.pair2.r1 = 0.5 * std::log2((at_y1(total) + 1.0) / (at_y1(input.D) + 1.0));
  out.pair2.r2 = 0.5 * std::log2(at_y2(input.D) + 1.0);
  return out;
}

Region2D gvbc_region(const ChannelParams& params, int resolution) {
  params.validate();
  if (resolution < 2) {
    throw std::invalid_argument("gvbc_region: resolution must be at least 2");
  }
  const int n = resolution - 1;
  const double c_max = std::sqrt(params.P1 * params.P2);

  GvbcInput input;
  input.a12 = params.a12;
  input.a21 = params.a21;

  HullAccumulator acc;
  Polygon2D origin;
  origin.vertices = {{0.0, 0.0}};
  acc.add(origin);

  for (int ci = 0; ci <= n; ++ci) {
    const double c = c_max * (2.0 * ci / n - 1.0);
    Eigen::Matrix2d s;
    s << params.P1, c, c, params.P2;
    const Eigen::Matrix2d root =
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(s).operatorSqrt();
    for (int pi = 0; pi < resolution; ++pi) {
      const double phi = M_PI * pi / resolution;
      Eigen::Matrix2d u;
      u << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
      const Eigen::Matrix2d left = root * u;
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
          const Eigen::Vector2d t(static_cast<double>(i) / n, static_cast<double>(j) / n);
          input.S = s;
          input.B = left * t.asDiagonal() * left.transpose();
          input.D = s - input.B;
          const GvbcPairs pairs = gvbc_pairs(input);
          Polygon2D pts;
          pts.vertices = {{pairs.pair1.r1, pairs.pair1.r2},
                          {pairs.pair2.r1, pairs.pair2.r2}};
          acc.add(pts);
        }
      }
    }
  }
  return acc.result();
}

RelayCapacity relay_capacity(const ChannelParams& params, RelayRole role) {
  params.validate();
  const bool user2 = role == RelayRole::User2Relays;
  const double p_msg = user2 ? params.P1 : params.P2;
  const double p_rel = user2 ? params.P2 : params.P1;
  const double a = user2 ? params.a21 : params.a12;
  const double conf = params.K * params.K * p_msg;

  auto objective = [&](double rho) {
    const double direct =
        0.5 * std::log2(1.0 + p_msg + a * a * p_rel + 2.0 * a * rho * std::sqrt(p_msg * p_rel));
    const double listen = 0.5 * std::log2(1.0 + (1.0 - rho * rho) * conf);
    return std::min(direct, listen);
  };

  // Golden section: the min of an increasing and a decreasing term is
  // unimodal on [0,1].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
  }

  RelayCapacity out;
  out.bits = objective(0.5 * (lo + hi));
  out.degradedness_established = params.K >= 1.0;
  return out;
}

namespace {

struct HkBounds {
  double a1, b1, c1, d1;
  double a2, b2, c2, d2;
};

/// a_t: both common layers known; b_t: the other user's common layer known;
/// c_t, d_t: the other user's common layer decoded jointly, with and without
/// the own common layer known.
HkBounds hk_bounds(const ChannelParams& p, double beta1, double beta2) {
  GaussianModel m({"eU1", "eV1", "eU2", "eV2", "eZ1", "eZ2"});
  const double u1 = std::sqrt(beta1 * p.P1), v1 = std::sqrt((1.0 - beta1) * p.P1);
  const double u2 = std::sqrt(beta2 * p.P2), v2 = std::sqrt((1.0 - beta2) * p.P2);
  m.set_variable("U1", {u1, 0.0, 0.0, 0.0, 0.0, 0.0});
  m.set_variable("X1", {u1, v1, 0.0, 0.0, 0.0, 0.0});
  m.set_variable("U2", {0.0, 0.0, u2, 0.0, 0.0, 0.0});
  m.set_variable("X2", {0.0, 0.0, u2, v2, 0.0, 0.0});
  m.set_variable("Y1", {u1, v1, p.a21 * u2, p.a21 * v2, 1.0, 0.0});
  m.set_variable("Y2", {p.a12 * u1, p.a12 * v1, u2, v2, 0.0, 1.0});

  HkBounds h;
  h.a1 = conditional_mutual_information(m, {"Y1"}, {"X1"}, {"U1", "U2"});
  h.b1 = conditional_mutual_information(m, {"Y1"}, {"X1"}, {"U2"});
  h.c1 = conditional_mutual_information(m, {"Y1"}, {"X1", "U2"}, {"U1"});
  h.d1 = mutual_information(m, {"Y1"}, {"X1", "U2"});
  h.a2 = conditional_mutual_information(m, {"Y2"}, {"X2"}, {"U1", "U2"});
  h.b2 = conditional_mutual_information(m, {"Y2"}, {"X2"}, {"U1"});
  h.c2 = conditional_mutual_information(m, {"Y2"}, {"X2", "U1"}, {"U2"});
  h.d2 = mutual_information(m, {"Y2"}, {"X2", "U1"});
  return h;
}

}  // namespace

Polygon2D hk_polygon(const ChannelParams& params, double beta1, double beta2) {
  params.validate();
  for (double b : {beta1, beta2}) {
    if (!(b >= 0.0 && b <= 1.0)) {
      throw std::invalid_argument("hk_polygon: common fraction outside [0,1]");
    }
  }
  const HkBounds h = hk_bounds(params, beta1, beta2);
  const Coeff one{1}, two{2}, minus{-1};
  LinearSystem sys({"R1", "R2"});
  sys.add_row({{"R1", one}}, h.b1);
  sys.add_row({{"R2", one}}, h.b2);
  sys.add_row({{"R1", one}, {"R2", one}}, h.d1 + h.a2);
  sys.add_row({{"R1", one}, {"R2", one}}, h.a1 + h.d2);
  sys.add_row({{"R1", one}, {"R2", one}}, h.c1 + h.c2);
  sys.add_row({{"R1", two}, {"R2", one}}, h.d1 + h.a1 + h.c2);
  sys.add_row({{"R1", one}, {"R2", two}}, h.d2 + h.a2 + h.c1);
  sys.add_row({{"R1", minus}}, 0.0);
  sys.add_row({{"R2", minus}}, 0.0);
  const std::optional<Polygon2D> poly = polygon_from_system(sys);
  return poly ? *poly : Polygon2D{};
}

Region2D hk_region(const ChannelParams& params, int resolution) {
  if (resolution < 2) {
    throw std::invalid_argument("hk_region: resolution must be at least 2");
  }
  const int n = resolution - 1;
  HullAccumulator acc;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      acc.add(hk_polygon(params, static_cast<double>(i) / n, static_cast<double>(j) / n));
    }
  }
  return acc.result();
}

}  // namespace icc
