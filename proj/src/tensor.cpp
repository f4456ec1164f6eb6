#include "heiscr/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace heiscr {

CurvatureReport curvature(const MetricField& g, const Point& p) {
  const int d = g.dim;
  JetMat jets = g.eval_jets(p);

  MatD G = jets.values();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::fabs(G(i, j) - G(j, i)) > 1e-9)
        throw std::runtime_error("curvature: metric matrix not symmetric");
  if (!is_positive_definite(G))
    throw std::runtime_error("curvature: metric not positive definite");
  MatD Ginv = inverse(G);

  // d1[m](i,j) = d_m g_ij, d2[m][l](i,j) = d_m d_l g_ij, straight off the jets.
  auto d1 = [&](int m, int i, int j) { return jets.at(i, j).g[static_cast<size_t>(m)]; };
  auto d2 = [&](int m, int l, int i, int j) { return jets.at(i, j).hess(m, l); };

  CurvatureReport rep;
  rep.dim = d;
  rep.christoffel.assign(static_cast<size_t>(d * d * d), 0.0);
  rep.riemann.assign(static_cast<size_t>(d * d * d * d), 0.0);

  auto gamma_at = [&](int k, int i, int j) -> double& {
    return rep.christoffel[static_cast<size_t>((k * d + i) * d + j)];
  };
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double s = 0;
        for (int l = 0; l < d; ++l)
          s += Ginv(k, l) * (d1(i, l, j) + d1(j, l, i) - d1(l, i, j));
        gamma_at(k, i, j) = 0.5 * s;
        gamma_at(k, j, i) = 0.5 * s;
      }

  // dGinv[m] = -Ginv (d_m G) Ginv
  std::vector<MatD> dGinv(static_cast<size_t>(d));
  for (int m = 0; m < d; ++m) {
    MatD dG(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) dG(i, j) = d1(m, i, j);
    MatD t = Ginv.mul(dG).mul(Ginv);
    for (int i = 0; i < d * d; ++i) t.a[static_cast<size_t>(i)] = -t.a[static_cast<size_t>(i)];
    dGinv[static_cast<size_t>(m)] = t;
  }

  // dgamma[m](k,i,j) = d_m Gamma^k_{ij}
  std::vector<double> dgamma(static_cast<size_t>(d * d * d * d), 0.0);
  auto dgamma_at = [&](int m, int k, int i, int j) -> double& {
    return dgamma[static_cast<size_t>(((m * d + k) * d + i) * d + j)];
  };
  for (int m = 0; m < d; ++m)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          double s = 0;
          for (int l = 0; l < d; ++l) {
            s += dGinv[static_cast<size_t>(m)](k, l) * (d1(i, l, j) + d1(j, l, i) - d1(l, i, j));
            s += Ginv(k, l) * (d2(m, i, l, j) + d2(m, j, l, i) - d2(m, l, i, j));
          }
          dgamma_at(m, k, i, j) = 0.5 * s;
          dgamma_at(m, k, j, i) = 0.5 * s;
        }

  auto riem_at = [&](int l, int k, int i, int j) -> double& {
    return rep.riemann[static_cast<size_t>(((l * d + k) * d + i) * d + j)];
  };
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double s = dgamma_at(i, l, j, k) - dgamma_at(j, l, i, k);
          for (int m = 0; m < d; ++m)
            s += gamma_at(m, j, k) * gamma_at(l, i, m) - gamma_at(m, i, k) * gamma_at(l, j, m);
          riem_at(l, k, i, j) = s;
        }

  rep.ricci = MatD(d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double s = 0;
      for (int i = 0; i < d; ++i) s += rep.riem(i, k, i, j);
      rep.ricci(j, k) = s;
    }

  rep.scalar = 0;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) rep.scalar += Ginv(j, k) * rep.ricci(j, k);

  double rmax = 0;
  for (double v : rep.riemann) rmax = std::max(rmax, std::fabs(v));
  double scale = std::max(1.0, rmax);
  double bianchi = 0, antisym = 0;
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          bianchi = std::max(
              bianchi, std::fabs(rep.riem(l, k, i, j) + rep.riem(l, i, j, k) + rep.riem(l, j, k, i)));
          antisym = std::max(antisym, std::fabs(rep.riem(l, k, i, j) + rep.riem(l, k, j, i)));
        }
  rep.bianchi_residual = bianchi / scale;
  rep.antisym_residual = antisym / scale;
  return rep;
}

double sectional(const MetricField& g, const Point& p, const VecD& u, const VecD& v,
                 double degenerate_tol) {
  const int d = g.dim;
  MatD G = g.value(p);
  double uu = G.mul(u).dot(u);
  double vv = G.mul(v).dot(v);
  double uv = G.mul(v).dot(u);
  double denom = uu * vv - uv * uv;
  if (denom < degenerate_tol) throw std::invalid_argument("sectional: degenerate plane");

  CurvatureReport rep = curvature(g, p);
  // w^l = R^l_{kij} u^i v^j v^k
  VecD w(d);
  for (int l = 0; l < d; ++l) {
    double s = 0;
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s += rep.riem(l, k, i, j) * u[i] * v[j] * v[k];
    w[l] = s;
  }
  return G.mul(w).dot(u) / denom;
}

double killing_residual(const MetricField& g, const PolyVectorField& X, const Point& p) {
  const int d = g.dim;
  JetMat jets = g.eval_jets(p);
  VecD xv = X.eval(p);
  MatD xj = X.jacobian(p);
  double r = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0;
      for (int k = 0; k < d; ++k) {
        s += xv[k] * jets.at(i, j).g[static_cast<size_t>(k)];
        s += jets.at(k, j).v * xj(k, i);
        s += jets.at(i, k).v * xj(k, j);
      }
      r = std::max(r, std::fabs(s));
    }
  return r;
}

VecD lie_derivative_form(const PolyVectorField& X, const OneFormField& w, const Point& p) {
  const int d = w.dim;
  auto wj = w.eval_jets(p);
  VecD xv = X.eval(p);
  MatD xj = X.jacobian(p);
  VecD out(d);
  for (int i = 0; i < d; ++i) {
    double s = 0;
    for (int k = 0; k < d; ++k) {
      s += wj[static_cast<size_t>(k)].g[static_cast<size_t>(i)] * xv[k];
      s += wj[static_cast<size_t>(k)].v * xj(k, i);
      s += xv[k] * (wj[static_cast<size_t>(i)].g[static_cast<size_t>(k)] -
                    wj[static_cast<size_t>(k)].g[static_cast<size_t>(i)]);
    }
    out[i] = s;
    if (!std::isfinite(s)) throw std::runtime_error("lie_derivative_form: non-finite evaluation");
  }
  return out;
}

MatD exterior_derivative(const OneFormField& w, const Point& p) {
  const int d = w.dim;
  auto wj = w.eval_jets(p);
  MatD out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double v = wj[static_cast<size_t>(j)].g[static_cast<size_t>(i)] -
                 wj[static_cast<size_t>(i)].g[static_cast<size_t>(j)];
      if (!std::isfinite(v)) throw std::runtime_error("exterior_derivative: non-finite evaluation");
      out(i, j) = v;
    }
  return out;
}

namespace {

// Pfaffian of dw restricted to the listed basis indices, via the recursive
// matching expansion. (dw)^m on those 2m vectors equals m! times this.
double pfaffian_of(const MatD& dw, std::vector<int>& idx) {
  size_t m = idx.size();
  if (m == 0) return 1.0;
  double total = 0;
  int first = idx[0];
  for (size_t t = 1; t < m; ++t) {
    std::vector<int> rest;
    rest.reserve(m - 2);
    for (size_t s = 1; s < m; ++s)
      if (s != t) rest.push_back(idx[s]);
    double sign = (t % 2 == 1) ? 1.0 : -1.0;
    total += sign * dw(first, idx[t]) * pfaffian_of(dw, rest);
  }
  return total;
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

} // namespace

ChristoffelEvaluator::ChristoffelEvaluator(const std::vector<std::vector<Polynomial>>& g_entries)
    : dim_(static_cast<int>(g_entries.size())), g_(g_entries) {
  dg_.resize(static_cast<size_t>(dim_));
  for (int m = 0; m < dim_; ++m) {
    dg_[static_cast<size_t>(m)].resize(static_cast<size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
      dg_[static_cast<size_t>(m)][static_cast<size_t>(i)].resize(static_cast<size_t>(dim_));
      for (int j = 0; j < dim_; ++j)
        dg_[static_cast<size_t>(m)][static_cast<size_t>(i)][static_cast<size_t>(j)] =
            g_[static_cast<size_t>(i)][static_cast<size_t>(j)].derivative(m);
    }
  }
}

MatD ChristoffelEvaluator::metric_value(const Point& p) const {
  MatD G(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) G(i, j) = g_[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(p.c);
  return G;
}

std::vector<double> ChristoffelEvaluator::at(const Point& p) const {
  int d = dim_;
  MatD Ginv = inverse(metric_value(p));
  std::vector<double> d1(static_cast<size_t>(d * d * d));
  for (int m = 0; m < d; ++m)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        d1[static_cast<size_t>((m * d + i) * d + j)] =
            dg_[static_cast<size_t>(m)][static_cast<size_t>(i)][static_cast<size_t>(j)].eval(p.c);
  std::vector<double> gamma(static_cast<size_t>(d * d * d));
  auto D1 = [&](int m, int i, int j) { return d1[static_cast<size_t>((m * d + i) * d + j)]; };
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double s = 0;
        for (int l = 0; l < d; ++l) s += Ginv(k, l) * (D1(i, l, j) + D1(j, l, i) - D1(l, i, j));
        gamma[static_cast<size_t>((k * d + i) * d + j)] = 0.5 * s;
        gamma[static_cast<size_t>((k * d + j) * d + i)] = 0.5 * s;
      }
  return gamma;
}

VecD ChristoffelEvaluator::acceleration(const Point& p, const VecD& v) const {
  int d = dim_;
  auto gamma = at(p);
  VecD acc(d);
  for (int k = 0; k < d; ++k) {
    double s = 0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s += gamma[static_cast<size_t>((k * d + i) * d + j)] * v[i] * v[j];
    acc[k] = -s;
  }
  return acc;
}

double contact_volume(const OneFormField& eta, int n, const Point& p) {
  const int d = 2 * n + 1;
  VecD ev = eta.value(p);
  MatD dw = exterior_derivative(eta, p);
  // Ordered test tuple (dz, dx_1, dy_1, ..., dx_n, dy_n).
  std::vector<int> tuple;
  tuple.push_back(z_index(n));
  for (int i = 0; i < n; ++i) {
    tuple.push_back(x_index(n, i));
    tuple.push_back(y_index(n, i));
  }
  double total = 0;
  for (int k = 0; k < d; ++k) {
    std::vector<int> rest;
    rest.reserve(static_cast<size_t>(d - 1));
    for (int s = 0; s < d; ++s)
      if (s != k) rest.push_back(tuple[static_cast<size_t>(s)]);
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    double etav = ev[tuple[static_cast<size_t>(k)]];
    if (etav == 0.0) continue;
    total += sign * etav * factorial(n) * pfaffian_of(dw, rest);
  }
  return total;
}

} // namespace heiscr
