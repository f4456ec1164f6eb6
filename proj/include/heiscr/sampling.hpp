#pragma once

#include <cstdint>
#include <vector>

#include "heiscr/fields.hpp"

namespace heiscr {

/// Deterministic RNG: splitmix-seeded xorshift with hand-rolled uniform
/// doubles, so streams are identical across standard libraries and runs.
class Rng {
public:
  explicit Rng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  uint64_t next() {
    uint64_t x = s_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    s_ = x;
    return x * 0x2545f4914f6cdd1dull;
  }

  /// Uniform in [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) { // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

private:
  uint64_t s_;
};

/// Sample points of R^{2n+1} in the ball of the given radius. A couple of
/// z-axis points are appended deliberately; the moment map degenerates there
/// and code must cope.
inline std::vector<Point> sample_ball(int n, int count, uint64_t seed, double radius = 2.0,
                                      bool include_axis = true) {
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(count));
  int d = 2 * n + 1;
  while (static_cast<int>(pts.size()) < count) {
    Point p(n);
    double r2 = 0;
    for (int i = 0; i < d; ++i) {
      double v = rng.uniform(-radius, radius);
      p.c[i] = v;
      r2 += v * v;
    }
    if (r2 <= radius * radius) pts.push_back(p);
  }
  if (include_axis && count >= 2) {
    Point axis(n);
    axis.z() = radius / 2.0;
    pts[static_cast<size_t>(count - 1)] = axis;
    Point origin(n);
    pts[static_cast<size_t>(count - 2)] = origin;
  }
  return pts;
}

} // namespace heiscr
