#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "heiscr/linalg.hpp"

namespace heiscr {

/// Second-order forward-mode jet: value, gradient, and Hessian of a scalar
/// expression with respect to the ambient coordinates.
///
/// Arithmetic follows the truncated Taylor product rules, so evaluating a
/// closed-form expression in Jet2 arithmetic yields its exact derivatives up
/// to floating-point rounding. The Hessian is stored dense and kept symmetric
/// term by term.
struct Jet2 {
  int n = 0;
  double v = 0.0;
  std::array<double, kMaxDim> g{};
  std::array<double, kMaxDim * kMaxDim> h{};

  Jet2() = default;
  explicit Jet2(int dim, double value = 0.0) : n(dim), v(value) {
    g.fill(0.0);
    h.fill(0.0);
  }

  static Jet2 constant(int dim, double value) { return Jet2(dim, value); }
  static Jet2 variable(int dim, int index, double value) {
    Jet2 j(dim, value);
    j.g[static_cast<size_t>(index)] = 1.0;
    return j;
  }

  double hess(int i, int j) const { return h[static_cast<size_t>(i * n + j)]; }
  double& hess(int i, int j) { return h[static_cast<size_t>(i * n + j)]; }

  Jet2 operator-() const {
    Jet2 r = *this;
    r.v = -r.v;
    for (int i = 0; i < n; ++i) r.g[i] = -r.g[i];
    for (int i = 0; i < n * n; ++i) r.h[i] = -r.h[i];
    return r;
  }

  Jet2& operator+=(const Jet2& o) {
    v += o.v;
    for (int i = 0; i < n; ++i) g[i] += o.g[i];
    for (int i = 0; i < n * n; ++i) h[i] += o.h[i];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    v -= o.v;
    for (int i = 0; i < n; ++i) g[i] -= o.g[i];
    for (int i = 0; i < n * n; ++i) h[i] -= o.h[i];
    return *this;
  }
  Jet2& operator*=(double s) {
    v *= s;
    for (int i = 0; i < n; ++i) g[i] *= s;
    for (int i = 0; i < n * n; ++i) h[i] *= s;
    return *this;
  }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator+(Jet2 a, double c) {
    a.v += c;
    return a;
  }
  friend Jet2 operator+(double c, Jet2 a) {
    a.v += c;
    return a;
  }
  friend Jet2 operator-(Jet2 a, double c) {
    a.v -= c;
    return a;
  }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(a.n);
    r.v = a.v * b.v;
    for (int i = 0; i < a.n; ++i) r.g[i] = a.v * b.g[i] + b.v * a.g[i];
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j)
        r.hess(i, j) =
            a.v * b.hess(i, j) + b.v * a.hess(i, j) + a.g[i] * b.g[j] + a.g[j] * b.g[i];
    return r;
  }

  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.v == 0.0) throw std::domain_error("Jet2: division by zero value");
    Jet2 q(a.n);
    q.v = a.v / b.v;
    for (int i = 0; i < a.n; ++i) q.g[i] = (a.g[i] - q.v * b.g[i]) / b.v;
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j)
        q.hess(i, j) = (a.hess(i, j) - q.v * b.hess(i, j) - q.g[i] * b.g[j] -
                        q.g[j] * b.g[i]) /
                       b.v;
    return q;
  }

  VecD gradient() const {
    VecD r(n);
    for (int i = 0; i < n; ++i) r[i] = g[i];
    return r;
  }
  MatD hessian() const {
    MatD r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = hess(i, j);
    return r;
  }
};

} // namespace heiscr
