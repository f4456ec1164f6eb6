#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace heiscr {

/// Hard cap on the ambient dimension 2n+1 (n <= 4).
inline constexpr int kMaxDim = 9;

/// Fixed-capacity vector of doubles, dimension <= kMaxDim.
struct VecD {
  int n = 0;
  std::array<double, kMaxDim> a{};

  VecD() = default;
  explicit VecD(int dim) : n(dim) { a.fill(0.0); }

  double& operator[](int i) { return a[static_cast<size_t>(i)]; }
  double operator[](int i) const { return a[static_cast<size_t>(i)]; }

  VecD& operator+=(const VecD& o) {
    for (int i = 0; i < n; ++i) a[i] += o.a[i];
    return *this;
  }
  VecD& operator-=(const VecD& o) {
    for (int i = 0; i < n; ++i) a[i] -= o.a[i];
    return *this;
  }
  VecD& operator*=(double s) {
    for (int i = 0; i < n; ++i) a[i] *= s;
    return *this;
  }
  friend VecD operator+(VecD x, const VecD& y) { return x += y; }
  friend VecD operator-(VecD x, const VecD& y) { return x -= y; }
  friend VecD operator*(double s, VecD x) { return x *= s; }

  double dot(const VecD& o) const {
    double s = 0;
    for (int i = 0; i < n; ++i) s += a[i] * o.a[i];
    return s;
  }
  double norm() const { return std::sqrt(dot(*this)); }
  double max_abs() const {
    double m = 0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
  }
};

/// Fixed-capacity square matrix of doubles.
struct MatD {
  int n = 0;
  std::array<double, kMaxDim * kMaxDim> a{};

  MatD() = default;
  explicit MatD(int dim) : n(dim) { a.fill(0.0); }

  static MatD identity(int dim) {
    MatD m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(int i, int j) { return a[static_cast<size_t>(i * n + j)]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i * n + j)]; }

  MatD& operator+=(const MatD& o) {
    for (int i = 0; i < n * n; ++i) a[i] += o.a[i];
    return *this;
  }
  MatD& operator-=(const MatD& o) {
    for (int i = 0; i < n * n; ++i) a[i] -= o.a[i];
    return *this;
  }
  friend MatD operator+(MatD x, const MatD& y) { return x += y; }
  friend MatD operator-(MatD x, const MatD& y) { return x -= y; }

  VecD mul(const VecD& v) const {
    VecD r(n);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }
  MatD mul(const MatD& o) const {
    MatD r(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double x = (*this)(i, k);
        if (x == 0.0) continue;
        for (int j = 0; j < n; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }
  MatD transpose() const {
    MatD r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  double max_abs() const {
    double m = 0;
    for (int i = 0; i < n * n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
  }
};

/// Gauss-Jordan inverse with partial pivoting. Throws on (near-)singular input.
inline MatD inverse(const MatD& m, double pivot_tol = 1e-13) {
  int n = m.n;
  MatD a = m;
  MatD inv = MatD::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (std::fabs(a(piv, col)) < pivot_tol)
      throw std::runtime_error("inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    double d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

inline double determinant(const MatD& m) {
  int n = m.n;
  MatD a = m;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      det = -det;
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      double f = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Rank of a set of column vectors by row reduction with threshold.
inline int numeric_rank(const std::vector<VecD>& cols, double tol = 1e-9) {
  if (cols.empty()) return 0;
  int rows = cols[0].n;
  std::vector<VecD> w = cols;
  int rank = 0;
  for (int r = 0; r < rows && rank < static_cast<int>(w.size()); ++r) {
    int piv = -1;
    double best = tol;
    for (int c = rank; c < static_cast<int>(w.size()); ++c)
      if (std::fabs(w[c][r]) > best) {
        best = std::fabs(w[c][r]);
        piv = c;
      }
    if (piv < 0) continue;
    std::swap(w[rank], w[piv]);
    for (int c = 0; c < static_cast<int>(w.size()); ++c) {
      if (c == rank) continue;
      double f = w[c][r] / w[rank][r];
      if (f == 0.0) continue;
      for (int i = 0; i < rows; ++i) w[c][i] -= f * w[rank][i];
    }
    ++rank;
  }
  return rank;
}

/// Cholesky test for positive definiteness (no factor returned).
inline bool is_positive_definite(const MatD& m, double tol = 0.0) {
  int n = m.n;
  MatD a = m;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      if (i == j) {
        if (s <= tol) return false;
        a(i, i) = std::sqrt(s);
      } else {
        a(i, j) = s / a(j, j);
      }
    }
  }
  return true;
}

} // namespace heiscr
