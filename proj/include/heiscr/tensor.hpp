#pragma once

#include <vector>

#include "heiscr/fields.hpp"

namespace heiscr {

/// Levi-Civita curvature data of a metric at one point.
///
/// Index conventions, with d the ambient dimension and flat storage:
///   christoffel(k,i,j)   = Gamma^k_{ij}
///   riemann(l,k,i,j)     = coefficient of d_l in R(d_i, d_j) d_k
///   ricci(j,k)           = sum_i riemann(i,k,i,j)
/// Residuals are reported relative to the largest curvature entry.
struct CurvatureReport {
  int dim = 0;
  std::vector<double> christoffel; // d^3
  std::vector<double> riemann;     // d^4
  MatD ricci;
  double scalar = 0.0;
  double bianchi_residual = 0.0;
  double antisym_residual = 0.0;

  double gamma(int k, int i, int j) const {
    return christoffel[static_cast<size_t>((k * dim + i) * dim + j)];
  }
  double riem(int l, int k, int i, int j) const {
    return riemann[static_cast<size_t>(((l * dim + k) * dim + i) * dim + j)];
  }
};

CurvatureReport curvature(const MetricField& g, const Point& p);

/// Sectional curvature of span(u, v). Throws if the plane is degenerate.
double sectional(const MetricField& g, const Point& p, const VecD& u, const VecD& v,
                 double degenerate_tol = 1e-10);

/// Max-abs component of the Lie derivative of g along X at p; zero iff X is
/// an infinitesimal isometry there.
double killing_residual(const MetricField& g, const PolyVectorField& X, const Point& p);

/// Cartan formula: (L_X w)_i = d(w(X))_i + (i_X dw)_i.
VecD lie_derivative_form(const PolyVectorField& X, const OneFormField& w, const Point& p);

/// Component matrix dw_ij = d_i w_j - d_j w_i (no 1/2 factor), so that
/// dw(X,Y) = X(w(Y)) - Y(w(X)) - w([X,Y]).
MatD exterior_derivative(const OneFormField& w, const Point& p);

/// Coefficient of eta ^ (d eta)^n against dz ^ dx_1 ^ dy_1 ^ ... ^ dx_n ^ dy_n.
double contact_volume(const OneFormField& eta, int n, const Point& p);

/// Value-level Christoffel symbols of a polynomial metric, with the metric
/// derivatives precomputed symbolically. Cheap enough for the inner loop of
/// geodesic integration.
class ChristoffelEvaluator {
public:
  explicit ChristoffelEvaluator(const std::vector<std::vector<Polynomial>>& g_entries);

  int dim() const { return dim_; }

  /// gamma(k,i,j) = Gamma^k_{ij} at p, flat array d^3.
  std::vector<double> at(const Point& p) const;

  /// Geodesic acceleration a^k = -Gamma^k_{ij} v^i v^j.
  VecD acceleration(const Point& p, const VecD& v) const;

  MatD metric_value(const Point& p) const;

private:
  int dim_;
  std::vector<std::vector<Polynomial>> g_;
  std::vector<std::vector<std::vector<Polynomial>>> dg_; // [m][i][j]
};

} // namespace heiscr
