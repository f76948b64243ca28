#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "icc/baselines.hpp"
#include "icc/sweep.hpp"

using namespace icc;

namespace {

ChannelParams figure_params(double k = 0.0) {
  ChannelParams p;
  p.P1 = 6.0;
  p.P2 = 1.5;
  p.a12 = 0.74;
  p.a21 = 0.74;
  p.K = k;
  return p;
}

}  // namespace

TEST_CASE("gvbc pairs reproduce hand-evaluated splits") {
  GvbcInput in;
  in.S << 6.0, 0.0, 0.0, 1.5;
  in.a12 = 0.74;
  in.a21 = 0.74;

  SUBCASE("no transmit power at all") {
    const GvbcPairs p = gvbc_pairs(in);
    CHECK(p.pair1.r1 == 0.0);
    CHECK(p.pair1.r2 == 0.0);
    CHECK(p.pair2.r1 == 0.0);
    CHECK(p.pair2.r2 == 0.0);
  }

  SUBCASE("diagonal split: each user owns one antenna") {
    in.B << 6.0, 0.0, 0.0, 0.0;
    in.D << 0.0, 0.0, 0.0, 1.5;
    const GvbcPairs p = gvbc_pairs(in);
    const double s = 0.74 * 0.74 * 6.0;
    CHECK(p.pair1.r1 == doctest::Approx(0.5 * std::log2(7.0)).epsilon(1e-12));
    CHECK(p.pair1.r2 == doctest::Approx(0.5 * std::log2((s + 2.5) / (s + 1.0))).epsilon(1e-12));
  }

  SUBCASE("growing user-1 share trades rate monotonically") {
    double last_r1 = -1.0, last_r2 = 2.0;
    for (int i = 0; i <= 100; ++i) {
      const double t = i / 100.0;
      in.B = t * in.S;
      in.D = in.S - in.B;
      const GvbcPairs p = gvbc_pairs(in);
      CHECK(p.pair1.r1 >= last_r1 - 1e-12);
      CHECK(p.pair1.r2 <= last_r2 + 1e-12);
      CHECK(p.pair1.r1 >= 0.0);
      CHECK(p.pair1.r2 >= 0.0);
      CHECK(p.pair2.r1 >= 0.0);
      CHECK(p.pair2.r2 >= 0.0);
      last_r1 = p.pair1.r1;
      last_r2 = p.pair1.r2;
    }
  }

  SUBCASE("covariance splits that overspend or go indefinite are rejected") {
    in.B << -0.1, 0.0, 0.0, 0.0;
    CHECK_THROWS_AS((void)gvbc_pairs(in), std::invalid_argument);
    in.B << 6.0, 0.0, 0.0, 0.0;
    in.D << 0.5, 0.0, 0.0, 1.5;
    CHECK_THROWS_AS((void)gvbc_pairs(in), std::invalid_argument);
    in.B << 4.0, 3.9, 3.9, 1.0;  // symmetric but indefinite
    in.D = Eigen::Matrix2d::Zero();
    CHECK_THROWS_AS((void)gvbc_pairs(in), std::invalid_argument);
  }
}

TEST_CASE("gvbc region basics") {
  SUBCASE("parallel channels contain the capacity rectangle") {
    ChannelParams p;
    p.P1 = 3.0;
    p.P2 = 3.0;
    const Region2D region = gvbc_region(p, 5);
    const double c = 0.5 * std::log2(4.0);
    const Polygon2D rect = convex_hull({{0, 0}, {c, 0}, {c, c}, {0, c}});
    CHECK(contains(region.hull, rect, 1e-9));
  }

  SUBCASE("grid refinement only grows the region") {
    const ChannelParams p = figure_params();
    const Region2D coarse = gvbc_region(p, 2);
    const Region2D fine = gvbc_region(p, 17);
    CHECK(contains(fine, coarse, 1e-9));
  }

  SUBCASE("user swap mirrors the region across the diagonal") {
    ChannelParams p;
    p.P1 = 6.0;
    p.P2 = 1.5;
    p.a12 = 0.9;
    p.a21 = 0.3;
    ChannelParams q;
    q.P1 = p.P2;
    q.P2 = p.P1;
    q.a12 = p.a21;
    q.a21 = p.a12;
    const Region2D rp = gvbc_region(p, 7);
    const Region2D rq = gvbc_region(q, 7);
    std::vector<Point2> mirrored;
    for (const Point2& v : rq.hull.vertices) mirrored.push_back({v.y, v.x});
    const Polygon2D reflected = convex_hull(mirrored);
    CHECK(contains(rp.hull, reflected, 1e-9));
    CHECK(contains(reflected, rp.hull, 1e-9));
  }
}

TEST_CASE("relay capacity against a dense grid and closed forms") {
  SUBCASE("relay transmission unseen by the receiver") {
    ChannelParams p = figure_params(2.0);
    p.a21 = 0.0;
    const RelayCapacity c = relay_capacity(p, RelayRole::User2Relays);
    CHECK(c.bits == doctest::Approx(0.5 * std::log2(7.0)).epsilon(1e-12));
    CHECK(c.degradedness_established);
  }

  SUBCASE("powerless relay") {
    ChannelParams p = figure_params(1.0);
    p.P2 = 1e-12;
    const RelayCapacity c = relay_capacity(p, RelayRole::User2Relays);
    CHECK(std::abs(c.bits - 0.5 * std::log2(7.0)) < 1e-5);
  }

  SUBCASE("golden section agrees with a 1e5-point scan") {
    const ChannelParams p = figure_params(4.0);
    for (RelayRole role : {RelayRole::User2Relays, RelayRole::User1Relays}) {
      const double p_msg = role == RelayRole::User2Relays ? p.P1 : p.P2;
      const double p_rel = role == RelayRole::User2Relays ? p.P2 : p.P1;
      const double a = 0.74;
      double best = 0.0;
      for (int i = 0; i <= 100000; ++i) {
        const double rho = i / 100000.0;
        const double direct = 0.5 * std::log2(1.0 + p_msg + a * a * p_rel +
                                              2.0 * a * rho * std::sqrt(p_msg * p_rel));
        const double listen = 0.5 * std::log2(1.0 + (1.0 - rho * rho) * 16.0 * p_msg);
        best = std::max(best, std::min(direct, listen));
      }
      CHECK(relay_capacity(p, role).bits == doctest::Approx(best).epsilon(1e-6));
    }
  }

  SUBCASE("monotone in conferencing gain and relay power") {
    double last = 0.0;
    for (double k : {1.0, 1.5, 2.0, 3.0, 4.0, 6.0}) {
      const double bits = relay_capacity(figure_params(k), RelayRole::User2Relays).bits;
      CHECK(bits >= last - 1e-12);
      last = bits;
    }
    last = 0.0;
    for (double p2 : {0.5, 1.0, 1.5, 3.0, 6.0}) {
      ChannelParams p = figure_params(4.0);
      p.P2 = p2;
      const double bits = relay_capacity(p, RelayRole::User2Relays).bits;
      CHECK(bits >= last - 1e-12);
      last = bits;
    }
  }

  SUBCASE("weak conferencing is flagged") {
    CHECK_FALSE(relay_capacity(figure_params(0.5), RelayRole::User2Relays)
                    .degradedness_established);
    CHECK(relay_capacity(figure_params(1.0), RelayRole::User2Relays)
              .degradedness_established);
  }

  SUBCASE("roles are symmetric under user swap") {
    ChannelParams p = figure_params(3.0);
    p.a12 = 0.3;
    ChannelParams q;
    q.P1 = p.P2;
    q.P2 = p.P1;
    q.a12 = p.a21;
    q.a21 = p.a12;
    q.K = p.K;
    CHECK(relay_capacity(p, RelayRole::User1Relays).bits ==
          doctest::Approx(relay_capacity(q, RelayRole::User2Relays).bits).epsilon(1e-12));
  }
}

TEST_CASE("hk region closed forms and containment") {
  SUBCASE("no interference collapses to the capacity rectangle") {
    ChannelParams p;
    p.P1 = 6.0;
    p.P2 = 1.5;
    const Region2D region = hk_region(p, 3);
    const double c1 = 0.5 * std::log2(7.0);
    const double c2 = 0.5 * std::log2(2.5);
    REQUIRE(region.hull.size() == 4);
    CHECK(hausdorff(region.hull, convex_hull({{0, 0}, {c1, 0}, {c1, c2}, {0, c2}})) <=
          1e-9);
  }

  SUBCASE("single split is inside the full region") {
    const ChannelParams p = figure_params();
    const Polygon2D all_common = hk_polygon(p, 1.0, 1.0);
    REQUIRE(!all_common.empty());
    CHECK(contains(hk_region(p, 5).hull, all_common, 1e-9));
  }

  SUBCASE("invalid common fractions are rejected") {
    CHECK_THROWS_AS((void)hk_polygon(figure_params(), -0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)hk_polygon(figure_params(), 0.5, 1.1), std::invalid_argument);
    CHECK_THROWS_AS((void)hk_region(figure_params(), 1), std::invalid_argument);
  }

  SUBCASE("matches the zero-cooperation sweep on matched grids") {
    const ChannelParams p = figure_params();
    SweepConfig cfg;
    cfg.resolution = 9;
    const Region2D sweep = zero_cooperation_region(p, cfg);
    const Region2D oracle = hk_region(p, 9);
    REQUIRE(!sweep.hull.empty());
    REQUIRE(!oracle.hull.empty());
    CHECK(hausdorff(sweep.hull, oracle.hull) <= 1e-6);
  }

  SUBCASE("sits inside the broadcast outer region") {
    const ChannelParams p = figure_params();
    CHECK(contains(gvbc_region(p, 9), hk_region(p, 9), 1e-6));
  }
}
