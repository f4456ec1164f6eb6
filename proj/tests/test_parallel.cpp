#include <doctest.h>

#include "heiscr/heisenberg.hpp"
#include "heiscr/parallel.hpp"
#include "heiscr/sampling.hpp"
#include "heiscr/tensor.hpp"

using namespace heiscr;
namespace heis = heiscr::heisenberg;

TEST_CASE("parallel batch curvature matches the serial reference bitwise") {
  auto S = heis::standard_structure(heis::Model::Right, 2);
  auto pts = sample_ball(2, 64, 99);
  int count = static_cast<int>(pts.size());

  std::vector<double> serial(static_cast<size_t>(count)), parallel(static_cast<size_t>(count));
  map_indexed_serial(count, [&](int i) {
    serial[static_cast<size_t>(i)] = curvature(S.g_sasaki, pts[static_cast<size_t>(i)]).scalar;
  });
  map_indexed(count, [&](int i) {
    parallel[static_cast<size_t>(i)] = curvature(S.g_sasaki, pts[static_cast<size_t>(i)]).scalar;
  });
  for (int i = 0; i < count; ++i) CHECK(serial[static_cast<size_t>(i)] == parallel[static_cast<size_t>(i)]);
}

TEST_CASE("parallel batch killing residuals match the serial reference bitwise") {
  auto S = heis::standard_structure(heis::Model::Right, 1);
  auto pts = sample_ball(1, 128, 7);
  int count = static_cast<int>(pts.size());
  std::vector<double> a(static_cast<size_t>(count)), b(static_cast<size_t>(count));
  map_indexed_serial(count, [&](int i) {
    a[static_cast<size_t>(i)] = killing_residual(S.g, S.xi, pts[static_cast<size_t>(i)]);
  });
  map_indexed(count, [&](int i) {
    b[static_cast<size_t>(i)] = killing_residual(S.g, S.xi, pts[static_cast<size_t>(i)]);
  });
  for (int i = 0; i < count; ++i) CHECK(a[static_cast<size_t>(i)] == b[static_cast<size_t>(i)]);
}
