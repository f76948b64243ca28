// Times the OpenMP sweep against its single-threaded reference on one
// channel and checks that both produce the same hull.  Usage:
//   icc_bench [resolution] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "icc/geometry.hpp"
#include "icc/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <typename Fn>
double best_seconds(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int resolution = argc > 1 ? std::atoi(argv[1]) : 9;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  if (resolution < 2 || repeats < 1) {
    std::fprintf(stderr, "usage: icc_bench [resolution>=2] [repeats>=1]\n");
    return 2;
  }

  icc::ChannelParams params;
  params.P1 = 6.0;
  params.P2 = 1.5;
  params.a12 = 0.74;
  params.a21 = 0.43;
  params.K = 4.0;
  icc::SweepConfig cfg;
  cfg.resolution = resolution;

  const std::size_t grid = icc::simplex_grid(resolution).size();
  std::printf("channel P1=%g P2=%g a12=%g a21=%g K=%g\n", params.P1, params.P2, params.a12,
              params.a21, params.K);
  std::printf("resolution %d: %zu splits per user, %zu multipliers, both sides\n", resolution,
              grid, cfg.lambda_multipliers.size());
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp threads: built without OpenMP\n");
#endif

  icc::Region2D parallel, serial;
  const double tp = best_seconds(repeats, [&] { parallel = icc::sweep_region(params, cfg); });
  const double ts =
      best_seconds(repeats, [&] { serial = icc::sweep_region_serial(params, cfg); });

  const double gap = icc::hausdorff(parallel.hull, serial.hull);
  std::printf("parallel: %8.3f s  (%zu polygons)\n", tp, parallel.polygon_count);
  std::printf("serial:   %8.3f s  (%zu polygons)\n", ts, serial.polygon_count);
  std::printf("speedup:  %8.2fx\n", ts / tp);
  std::printf("hull gap: %.3e\n", gap);
  if (gap > icc::tol::kGeom) {
    std::fprintf(stderr, "error: parallel and serial hulls disagree\n");
    return 1;
  }
  return 0;
}
