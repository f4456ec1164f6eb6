#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace heiscr {

/// Smith normal form diagonal of an integer matrix: d_1 | d_2 | ... | d_r,
/// all positive, r = rank. Entries stay small here (lattice relation
/// matrices), so 64-bit arithmetic with overflow guards suffices.
struct SmithResult {
  std::vector<long long> diagonal;
  int rank = 0;
};

inline SmithResult smith_normal_form(std::vector<std::vector<long long>> m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  SmithResult res;
  int t = 0;
  auto absll = [](long long v) { return v < 0 ? -v : v; };
  while (t < rows && t < cols) {
    // find a nonzero pivot of minimal magnitude
    int pr = -1, pc = -1;
    long long best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr < 0 || absll(m[i][j]) < best)) {
          best = absll(m[i][j]);
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(m[t], m[pr]);
    for (int i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i)
        if (m[i][t] != 0) {
          long long qf = m[i][t] / m[t][t];
          for (int j = t; j < cols; ++j) m[i][j] -= qf * m[t][j];
          if (m[i][t] != 0) { // remainder smaller than pivot: swap up
            std::swap(m[i], m[t]);
            clean = false;
          }
        }
      for (int j = t + 1; j < cols; ++j)
        if (m[t][j] != 0) {
          long long qf = m[t][j] / m[t][t];
          for (int i = t; i < rows; ++i) m[i][j] -= qf * m[i][t];
          if (m[t][j] != 0) {
            for (int i = 0; i < rows; ++i) std::swap(m[i][j], m[i][t]);
            clean = false;
          }
        }
    }
    // divisibility fix: pivot must divide every remaining entry
    for (int i = t + 1; i < rows; ++i)
      for (int j = t + 1; j < cols; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (int jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
          clean = false;
          i = rows;
          break;
        }
    if (!clean) continue; // redo the reduction with the augmented row
    ++t;
  }
  for (int i = 0; i < t; ++i) res.diagonal.push_back(absll(m[i][i]));
  res.rank = t;
  return res;
}

} // namespace heiscr
