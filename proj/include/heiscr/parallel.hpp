#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heiscr {

/// Serial reference for map_indexed. Kept separate so tests can assert the
/// parallel kernel produces bit-identical results and the bench can compare
/// timings.
template <class F>
void map_indexed_serial(int count, F&& f) {
  for (int i = 0; i < count; ++i) f(i);
}

/// Apply f(i) for i in [0, count), fanning out over OpenMP threads when
/// available. Callers write results into slot i only, so scheduling cannot
/// affect the output.
template <class F>
void map_indexed(int count, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) f(i);
#else
  map_indexed_serial(count, f);
#endif
}

inline int worker_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace heiscr
