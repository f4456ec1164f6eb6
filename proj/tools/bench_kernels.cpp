// Timing comparison of the batch kernels: serial reference vs the OpenMP
// fan-out used in production, plus single-query timings of the heavier
// solvers. The parallel results are asserted bit-identical to the serial
// ones before any timing is reported.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "heiscr/heisenberg.hpp"
#include "heiscr/parallel.hpp"
#include "heiscr/sampling.hpp"
#include "heiscr/sasaki_cone.hpp"
#include "heiscr/subriemannian.hpp"
#include "heiscr/tensor.hpp"

using namespace heiscr;
namespace heis = heiscr::heisenberg;
namespace cone = heiscr::sasaki_cone;
namespace subr = heiscr::subriemannian;

using Clock = std::chrono::steady_clock;

static double secs(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <class F>
static double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    f();
    best = std::min(best, secs(t0, Clock::now()));
  }
  return best;
}

int main() {
  std::printf("threads: %d\n\n", worker_threads());

  {
    int n = 2, count = 1500;
    auto S = cone::deform(cone::ConeParams::from_doubles({1.0, 2.0}), n);
    auto pts = sample_ball(n, count, 11);
    std::vector<double> out_serial(static_cast<size_t>(count)), out_par(static_cast<size_t>(count));

    double ts = time_best_of(3, [&] {
      map_indexed_serial(count, [&](int i) {
        out_serial[static_cast<size_t>(i)] = curvature(S.g_sasaki, pts[static_cast<size_t>(i)]).scalar;
      });
    });
    double tp = time_best_of(3, [&] {
      map_indexed(count, [&](int i) {
        out_par[static_cast<size_t>(i)] = curvature(S.g_sasaki, pts[static_cast<size_t>(i)]).scalar;
      });
    });
    bool identical = true;
    for (int i = 0; i < count; ++i)
      if (out_serial[static_cast<size_t>(i)] != out_par[static_cast<size_t>(i)]) identical = false;
    std::printf("curvature batch (n=2, deformed, %d points)\n", count);
    std::printf("  serial   %8.1f ms\n  openmp   %8.1f ms   speedup %.2fx   identical: %s\n\n",
                1e3 * ts, 1e3 * tp, ts / tp, identical ? "yes" : "NO");
  }

  {
    int n = 1, count = 4000;
    auto S = heis::standard_structure(heis::Model::Right, n);
    auto pts = sample_ball(n, count, 13);
    std::vector<double> a(static_cast<size_t>(count)), b(static_cast<size_t>(count));
    double ts = time_best_of(3, [&] {
      map_indexed_serial(count, [&](int i) {
        a[static_cast<size_t>(i)] = heis::structure_residuals(S, pts[static_cast<size_t>(i)]).max();
      });
    });
    double tp = time_best_of(3, [&] {
      map_indexed(count, [&](int i) {
        b[static_cast<size_t>(i)] = heis::structure_residuals(S, pts[static_cast<size_t>(i)]).max();
      });
    });
    bool identical = true;
    for (int i = 0; i < count; ++i)
      if (a[static_cast<size_t>(i)] != b[static_cast<size_t>(i)]) identical = false;
    std::printf("structure residual scan (n=1, %d points)\n", count);
    std::printf("  serial   %8.1f ms\n  openmp   %8.1f ms   speedup %.2fx   identical: %s\n\n",
                1e3 * ts, 1e3 * tp, ts / tp, identical ? "yes" : "NO");
  }

  {
    Point o(1), ez = Point::xyz(0, 0, 1);
    subr::GraphOptions opt;
    opt.resolution = 32;
    double tg = time_best_of(2, [&] { (void)subr::dist_graph(o, ez, opt, subr::Mode::CC); });
    std::printf("lattice oracle, resolution 32, vertical target: %.0f ms per query\n", 1e3 * tg);
    double tsh = time_best_of(2, [&] { (void)subr::dist_shooting(o, ez, subr::Mode::CC); });
    std::printf("geodesic shooting, vertical target:            %.0f ms per solve\n", 1e3 * tsh);
  }
  return 0;
}
