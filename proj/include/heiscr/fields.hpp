#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "heiscr/jet.hpp"
#include "heiscr/linalg.hpp"
#include "heiscr/polynomial.hpp"

namespace heiscr {

/// A point of R^{2n+1} in coordinates (x_1..x_n, y_1..y_n, z).
///
/// All fields, forms, and metrics in the library use this flat ordering; the
/// z coordinate is always the last slot.
struct Point {
  int n = 1;
  VecD c;

  Point() : c(3) {}
  explicit Point(int blocks) : n(blocks), c(2 * blocks + 1) {}
  Point(int blocks, const VecD& flat) : n(blocks), c(flat) {
    if (flat.n != 2 * blocks + 1) throw std::invalid_argument("Point: wrong flat size");
  }

  int dim() const { return 2 * n + 1; }
  double x(int i) const { return c[i]; }
  double y(int i) const { return c[n + i]; }
  double z() const { return c[2 * n]; }
  double& x(int i) { return c.a[static_cast<size_t>(i)]; }
  double& y(int i) { return c.a[static_cast<size_t>(n + i)]; }
  double& z() { return c.a[static_cast<size_t>(2 * n)]; }

  static Point xyz(double x0, double y0, double z0) {
    Point p(1);
    p.x(0) = x0;
    p.y(0) = y0;
    p.z() = z0;
    return p;
  }

  bool finite() const {
    for (int i = 0; i < c.n; ++i)
      if (!std::isfinite(c[i])) return false;
    return true;
  }
};

inline int x_index(int /*n*/, int i) { return i; }
inline int y_index(int n, int i) { return n + i; }
inline int z_index(int n) { return 2 * n; }

/// Vector field on R^{2n+1} whose components are exact rational polynomials.
/// Closed under the Lie bracket, which is computed symbolically.
struct PolyVectorField {
  int n = 1;
  std::vector<Polynomial> comp; // dim() entries, flat coordinate order

  PolyVectorField() = default;
  explicit PolyVectorField(int blocks)
      : n(blocks), comp(static_cast<size_t>(2 * blocks + 1), Polynomial(2 * blocks + 1)) {}

  int dim() const { return 2 * n + 1; }

  static PolyVectorField zero(int blocks) { return PolyVectorField(blocks); }

  /// The constant coordinate field d/dx_k (flat index k).
  static PolyVectorField coordinate(int blocks, int k) {
    PolyVectorField f(blocks);
    f.comp[static_cast<size_t>(k)] = Polynomial::constant(2 * blocks + 1, 1);
    return f;
  }

  bool is_zero() const {
    for (auto& p : comp)
      if (!p.is_zero()) return false;
    return true;
  }

  VecD eval(const Point& p) const {
    VecD v(dim());
    for (int k = 0; k < dim(); ++k) v[k] = comp[static_cast<size_t>(k)].eval(p.c);
    return v;
  }

  /// Jacobian d X^k / d x_j, exact polynomial derivative evaluated at p.
  MatD jacobian(const Point& p) const {
    MatD j(dim());
    for (int k = 0; k < dim(); ++k)
      for (int l = 0; l < dim(); ++l)
        j(k, l) = comp[static_cast<size_t>(k)].derivative(l).eval(p.c);
    return j;
  }

  friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
    PolyVectorField r(a.n);
    for (size_t k = 0; k < r.comp.size(); ++k) r.comp[k] = a.comp[k] + b.comp[k];
    return r;
  }
  friend PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) {
    PolyVectorField r(a.n);
    for (size_t k = 0; k < r.comp.size(); ++k) r.comp[k] = a.comp[k] - b.comp[k];
    return r;
  }
  friend PolyVectorField operator*(const Rational& s, const PolyVectorField& f) {
    PolyVectorField r(f.n);
    for (size_t k = 0; k < r.comp.size(); ++k) r.comp[k] = s * f.comp[k];
    return r;
  }
  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
    return a.n == b.n && a.comp == b.comp;
  }
};

/// Exact Lie bracket [X,Y]^k = sum_j (X^j d_j Y^k - Y^j d_j X^k).
inline PolyVectorField bracket(const PolyVectorField& X, const PolyVectorField& Y) {
  if (X.n != Y.n) throw std::invalid_argument("bracket: dimension mismatch");
  PolyVectorField r(X.n);
  int d = X.dim();
  for (int k = 0; k < d; ++k) {
    Polynomial acc(d);
    for (int j = 0; j < d; ++j) {
      acc = acc + X.comp[static_cast<size_t>(j)] * Y.comp[static_cast<size_t>(k)].derivative(j);
      acc = acc - Y.comp[static_cast<size_t>(j)] * X.comp[static_cast<size_t>(k)].derivative(j);
    }
    r.comp[static_cast<size_t>(k)] = acc;
  }
  return r;
}

/// Square matrix of jets (row-major), used for metric and endomorphism values.
struct JetMat {
  int n = 0;
  std::vector<Jet2> m;

  JetMat() = default;
  explicit JetMat(int dim) : n(dim), m(static_cast<size_t>(dim * dim), Jet2(dim)) {}

  Jet2& at(int i, int j) { return m[static_cast<size_t>(i * n + j)]; }
  const Jet2& at(int i, int j) const { return m[static_cast<size_t>(i * n + j)]; }

  MatD values() const {
    MatD r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = at(i, j).v;
    return r;
  }
};

/// Smooth one-form evaluated through jets; carries its exact polynomial
/// components when it has them (the standard contact forms do).
struct OneFormField {
  int dim = 0;
  std::function<std::vector<Jet2>(const Point&)> eval_jets;
  std::optional<std::vector<Polynomial>> poly;

  static OneFormField from_polys(std::vector<Polynomial> comps) {
    OneFormField f;
    f.dim = static_cast<int>(comps.size());
    f.poly = comps;
    f.eval_jets = [comps](const Point& p) {
      std::vector<Jet2> out;
      out.reserve(comps.size());
      for (auto& c : comps) out.push_back(c.eval_jet(p.c));
      return out;
    };
    return f;
  }

  VecD value(const Point& p) const {
    auto js = eval_jets(p);
    VecD v(dim);
    for (int i = 0; i < dim; ++i) v[i] = js[static_cast<size_t>(i)].v;
    return v;
  }

  double apply(const Point& p, const VecD& v) const { return value(p).dot(v); }
};

/// Endomorphism field of the tangent bundle (matrix-valued, column j = image
/// of d/dx_j). Polynomial entries retained when available so brackets with
/// polynomial vector fields stay exact.
struct EndoField {
  int dim = 0;
  std::function<JetMat(const Point&)> eval_jets;
  std::optional<std::vector<std::vector<Polynomial>>> poly;

  static EndoField from_polys(std::vector<std::vector<Polynomial>> entries) {
    EndoField f;
    f.dim = static_cast<int>(entries.size());
    f.poly = entries;
    int d = f.dim;
    f.eval_jets = [entries, d](const Point& p) {
      JetMat m(d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.at(i, j) = entries[static_cast<size_t>(i)][static_cast<size_t>(j)].eval_jet(p.c);
      return m;
    };
    return f;
  }

  MatD value(const Point& p) const { return eval_jets(p).values(); }

  /// Apply to a polynomial vector field; requires polynomial entries.
  PolyVectorField apply_poly(const PolyVectorField& v) const {
    if (!poly) throw std::logic_error("EndoField: no polynomial form available");
    PolyVectorField r(v.n);
    for (int i = 0; i < dim; ++i) {
      Polynomial acc(dim);
      for (int j = 0; j < dim; ++j)
        acc = acc + (*poly)[static_cast<size_t>(i)][static_cast<size_t>(j)] * v.comp[static_cast<size_t>(j)];
      r.comp[static_cast<size_t>(i)] = acc;
    }
    return r;
  }
};

/// Riemannian metric as a field of symmetric positive definite matrices with
/// two derivative orders per component.
struct MetricField {
  int dim = 0;
  std::function<JetMat(const Point&)> eval_jets;

  static MetricField from_polys(const std::vector<std::vector<Polynomial>>& entries) {
    MetricField g;
    g.dim = static_cast<int>(entries.size());
    int d = g.dim;
    g.eval_jets = [entries, d](const Point& p) {
      JetMat m(d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.at(i, j) = entries[static_cast<size_t>(i)][static_cast<size_t>(j)].eval_jet(p.c);
      return m;
    };
    return g;
  }

  /// Value matrix with symmetry and positive-definiteness checks.
  MatD value(const Point& p) const {
    JetMat m = eval_jets(p);
    MatD v = m.values();
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        if (std::fabs(v(i, j) - v(j, i)) > 1e-9)
          throw std::runtime_error("MetricField: asymmetric component matrix");
    if (!is_positive_definite(v))
      throw std::runtime_error("MetricField: not positive definite at queried point");
    return v;
  }

  double inner(const Point& p, const VecD& u, const VecD& v) const {
    return value(p).mul(v).dot(u);
  }
};

} // namespace heiscr
