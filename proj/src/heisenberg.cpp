#include "heiscr/heisenberg.hpp"

#include <cmath>
#include <stdexcept>

namespace heiscr::heisenberg {

GroupElement mul(const GroupElement& p, const GroupElement& q) {
  if (p.n != q.n) throw std::invalid_argument("mul: dimension mismatch");
  GroupElement r(p.n);
  double cross = 0;
  for (int i = 0; i < p.n; ++i) {
    r.x(i) = p.x(i) + q.x(i);
    r.y(i) = p.y(i) + q.y(i);
    cross += p.x(i) * q.y(i);
  }
  r.z() = p.z() + q.z() + cross;
  return r;
}

GroupElement inv(const GroupElement& p) {
  GroupElement r(p.n);
  double cross = 0;
  for (int i = 0; i < p.n; ++i) {
    r.x(i) = -p.x(i);
    r.y(i) = -p.y(i);
    cross += p.x(i) * p.y(i);
  }
  r.z() = -p.z() + cross;
  return r;
}

GroupElement identity(int n) { return GroupElement(n); }

Point dilation(double lambda, const Point& p) {
  if (!(lambda > 0)) throw std::invalid_argument("dilation: lambda must be positive");
  Point r(p.n);
  for (int i = 0; i < p.n; ++i) {
    r.x(i) = lambda * p.x(i);
    r.y(i) = lambda * p.y(i);
  }
  r.z() = lambda * lambda * p.z();
  return r;
}

Point involution(const Point& p) {
  Point r(p.n);
  for (int i = 0; i < p.n; ++i) {
    r.x(i) = p.y(i);
    r.y(i) = p.x(i);
  }
  r.z() = p.z();
  return r;
}

MatD right_translation_jacobian(const GroupElement& h) {
  int d = h.dim();
  MatD j = MatD::identity(d);
  for (int i = 0; i < h.n; ++i) j(z_index(h.n), x_index(h.n, i)) = h.y(i);
  return j;
}

MatD left_translation_jacobian(const GroupElement& h) {
  int d = h.dim();
  MatD j = MatD::identity(d);
  for (int i = 0; i < h.n; ++i) j(z_index(h.n), y_index(h.n, i)) = h.x(i);
  return j;
}

GroupElement mul_polarized(const GroupElement& p, const GroupElement& q) {
  if (p.n != q.n) throw std::invalid_argument("mul_polarized: dimension mismatch");
  GroupElement r(p.n);
  double im = 0;
  for (int i = 0; i < p.n; ++i) {
    r.x(i) = p.x(i) + q.x(i);
    r.y(i) = p.y(i) + q.y(i);
    im += q.x(i) * p.y(i) - q.y(i) * p.x(i);
  }
  r.z() = p.z() + q.z() + 2.0 * im;
  return r;
}

MatD right_translation_jacobian_polarized(const GroupElement& h) {
  int d = h.dim();
  MatD j = MatD::identity(d);
  for (int i = 0; i < h.n; ++i) {
    j(z_index(h.n), x_index(h.n, i)) = -2.0 * h.y(i);
    j(z_index(h.n), y_index(h.n, i)) = 2.0 * h.x(i);
  }
  return j;
}

std::string model_name(Model m) {
  switch (m) {
    case Model::Right: return "right";
    case Model::Left: return "left";
    case Model::Intermediate: return "intermediate";
    case Model::Deformed: return "deformed";
  }
  return "?";
}

PolyVectorField reeb_field(int n) {
  return PolyVectorField::coordinate(n, z_index(n));
}

PolyVectorField frame_V_right(int n, int i) {
  PolyVectorField f(n);
  int d = 2 * n + 1;
  f.comp[static_cast<size_t>(x_index(n, i))] = Polynomial::constant(d, 1);
  f.comp[static_cast<size_t>(z_index(n))] = Polynomial::variable(d, y_index(n, i));
  return f;
}

PolyVectorField frame_U_right(int n, int i) {
  return PolyVectorField::coordinate(n, y_index(n, i));
}

PolyVectorField frame_V_left(int n, int i) {
  PolyVectorField f(n);
  int d = 2 * n + 1;
  f.comp[static_cast<size_t>(y_index(n, i))] = Polynomial::constant(d, 1);
  f.comp[static_cast<size_t>(z_index(n))] = Polynomial::variable(d, x_index(n, i));
  return f;
}

PolyVectorField frame_U_left(int n, int i) {
  return PolyVectorField::coordinate(n, x_index(n, i));
}

OneFormField eta_right(int n) {
  int d = 2 * n + 1;
  std::vector<Polynomial> c(static_cast<size_t>(d), Polynomial(d));
  for (int i = 0; i < n; ++i)
    c[static_cast<size_t>(x_index(n, i))] = Polynomial::variable(d, y_index(n, i), Rational(-1));
  c[static_cast<size_t>(z_index(n))] = Polynomial::constant(d, 1);
  return OneFormField::from_polys(c);
}

OneFormField eta_left(int n) {
  int d = 2 * n + 1;
  std::vector<Polynomial> c(static_cast<size_t>(d), Polynomial(d));
  for (int i = 0; i < n; ++i)
    c[static_cast<size_t>(y_index(n, i))] = Polynomial::variable(d, x_index(n, i), Rational(-1));
  c[static_cast<size_t>(z_index(n))] = Polynomial::constant(d, 1);
  return OneFormField::from_polys(c);
}

namespace {

OneFormField eta_intermediate(int n) {
  int d = 2 * n + 1;
  std::vector<Polynomial> c(static_cast<size_t>(d), Polynomial(d));
  for (int i = 0; i < n; ++i) {
    c[static_cast<size_t>(x_index(n, i))] = Polynomial::variable(d, y_index(n, i), Rational(2));
    c[static_cast<size_t>(y_index(n, i))] = Polynomial::variable(d, x_index(n, i), Rational(-2));
  }
  c[static_cast<size_t>(z_index(n))] = Polynomial::constant(d, 1);
  return OneFormField::from_polys(c);
}

std::vector<std::vector<Polynomial>> zero_matrix(int d) {
  return std::vector<std::vector<Polynomial>>(
      static_cast<size_t>(d), std::vector<Polynomial>(static_cast<size_t>(d), Polynomial(d)));
}

std::vector<std::vector<Polynomial>> phi_right_polys(int n) {
  int d = 2 * n + 1;
  auto m = zero_matrix(d);
  for (int i = 0; i < n; ++i) {
    // Phi(d/dy_i) = d/dx_i + y_i d/dz, Phi(d/dx_i) = -d/dy_i
    m[static_cast<size_t>(x_index(n, i))][static_cast<size_t>(y_index(n, i))] =
        Polynomial::constant(d, 1);
    m[static_cast<size_t>(z_index(n))][static_cast<size_t>(y_index(n, i))] =
        Polynomial::variable(d, y_index(n, i));
    m[static_cast<size_t>(y_index(n, i))][static_cast<size_t>(x_index(n, i))] =
        Polynomial::constant(d, -1);
  }
  return m;
}

std::vector<std::vector<Polynomial>> phi_left_polys(int n) {
  int d = 2 * n + 1;
  auto m = zero_matrix(d);
  for (int i = 0; i < n; ++i) {
    // Phi(d/dx_i) = d/dy_i + x_i d/dz, Phi(d/dy_i) = -d/dx_i
    m[static_cast<size_t>(y_index(n, i))][static_cast<size_t>(x_index(n, i))] =
        Polynomial::constant(d, 1);
    m[static_cast<size_t>(z_index(n))][static_cast<size_t>(x_index(n, i))] =
        Polynomial::variable(d, x_index(n, i));
    m[static_cast<size_t>(x_index(n, i))][static_cast<size_t>(y_index(n, i))] =
        Polynomial::constant(d, -1);
  }
  return m;
}

std::vector<std::vector<Polynomial>> phi_intermediate_polys(int n) {
  int d = 2 * n + 1;
  auto m = zero_matrix(d);
  for (int i = 0; i < n; ++i) {
    // J maps the horizontal lift of d/dx_i to the lift of d/dy_i; extended by
    // Phi(v) = J(v - eta(v) xi).
    m[static_cast<size_t>(y_index(n, i))][static_cast<size_t>(x_index(n, i))] =
        Polynomial::constant(d, 1);
    m[static_cast<size_t>(z_index(n))][static_cast<size_t>(x_index(n, i))] =
        Polynomial::variable(d, x_index(n, i), Rational(2));
    m[static_cast<size_t>(x_index(n, i))][static_cast<size_t>(y_index(n, i))] =
        Polynomial::constant(d, -1);
    m[static_cast<size_t>(z_index(n))][static_cast<size_t>(y_index(n, i))] =
        Polynomial::variable(d, y_index(n, i), Rational(2));
  }
  return m;
}

std::vector<std::vector<Polynomial>> g_right_polys(int n) {
  int d = 2 * n + 1;
  auto m = zero_matrix(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Polynomial yy = Polynomial::variable(d, y_index(n, i)) * Polynomial::variable(d, y_index(n, j));
      if (i == j) yy = yy + Polynomial::constant(d, 1);
      m[static_cast<size_t>(x_index(n, i))][static_cast<size_t>(x_index(n, j))] = yy;
    }
    m[static_cast<size_t>(y_index(n, i))][static_cast<size_t>(y_index(n, i))] =
        Polynomial::constant(d, 1);
    Polynomial my = Polynomial::variable(d, y_index(n, i), Rational(-1));
    m[static_cast<size_t>(x_index(n, i))][static_cast<size_t>(z_index(n))] = my;
    m[static_cast<size_t>(z_index(n))][static_cast<size_t>(x_index(n, i))] = my;
  }
  m[static_cast<size_t>(z_index(n))][static_cast<size_t>(z_index(n))] = Polynomial::constant(d, 1);
  return m;
}

std::vector<std::vector<Polynomial>> g_left_polys(int n) {
  int d = 2 * n + 1;
  auto m = zero_matrix(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Polynomial xx = Polynomial::variable(d, x_index(n, i)) * Polynomial::variable(d, x_index(n, j));
      if (i == j) xx = xx + Polynomial::constant(d, 1);
      m[static_cast<size_t>(y_index(n, i))][static_cast<size_t>(y_index(n, j))] = xx;
    }
    m[static_cast<size_t>(x_index(n, i))][static_cast<size_t>(x_index(n, i))] =
        Polynomial::constant(d, 1);
    Polynomial mx = Polynomial::variable(d, x_index(n, i), Rational(-1));
    m[static_cast<size_t>(y_index(n, i))][static_cast<size_t>(z_index(n))] = mx;
    m[static_cast<size_t>(z_index(n))][static_cast<size_t>(y_index(n, i))] = mx;
  }
  m[static_cast<size_t>(z_index(n))][static_cast<size_t>(z_index(n))] = Polynomial::constant(d, 1);
  return m;
}

} // namespace

std::vector<std::vector<Polynomial>> metric_recipe_polys(
    const std::vector<Polynomial>& eta, const std::vector<std::vector<Polynomial>>& phi) {
  int d = static_cast<int>(eta.size());
  // d(eta)_{rj} = d_r eta_j - d_j eta_r
  auto deta = zero_matrix(d);
  for (int r = 0; r < d; ++r)
    for (int j = 0; j < d; ++j)
      deta[static_cast<size_t>(r)][static_cast<size_t>(j)] =
          eta[static_cast<size_t>(j)].derivative(r) - eta[static_cast<size_t>(r)].derivative(j);
  auto g = zero_matrix(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Polynomial acc(d);
      for (int r = 0; r < d; ++r)
        acc = acc + phi[static_cast<size_t>(r)][static_cast<size_t>(i)] *
                        deta[static_cast<size_t>(r)][static_cast<size_t>(j)];
      g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          acc + eta[static_cast<size_t>(i)] * eta[static_cast<size_t>(j)];
    }
  return g;
}

std::vector<std::vector<Polynomial>> sasaki_companion_polys(
    const std::vector<Polynomial>& eta, const std::vector<std::vector<Polynomial>>& g) {
  int d = static_cast<int>(eta.size());
  auto out = zero_matrix(d);
  Rational half(1, 2);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          half * (g[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                  eta[static_cast<size_t>(i)] * eta[static_cast<size_t>(j)]);
  return out;
}

SasakiStructure standard_structure(Model model, int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("standard_structure: n out of range");
  SasakiStructure s;
  s.n = n;
  s.model = model;
  s.xi = reeb_field(n);
  std::vector<std::vector<Polynomial>> gp;
  switch (model) {
    case Model::Right:
      s.eta = eta_right(n);
      s.phi = EndoField::from_polys(phi_right_polys(n));
      gp = g_right_polys(n);
      break;
    case Model::Left:
      s.eta = eta_left(n);
      s.phi = EndoField::from_polys(phi_left_polys(n));
      gp = g_left_polys(n);
      break;
    case Model::Intermediate: {
      s.eta = eta_intermediate(n);
      auto phi = phi_intermediate_polys(n);
      s.phi = EndoField::from_polys(phi);
      gp = metric_recipe_polys(*s.eta.poly, phi);
      break;
    }
    case Model::Deformed:
      throw std::invalid_argument("standard_structure: deformed structures come from the cone module");
  }
  s.g = MetricField::from_polys(gp);
  s.g_sasaki = MetricField::from_polys(sasaki_companion_polys(*s.eta.poly, gp));
  return s;
}

double StructureResiduals::max() const {
  double m = eta_xi;
  m = std::fmax(m, phi_xi);
  m = std::fmax(m, phi_square);
  m = std::fmax(m, g_xi_eta);
  m = std::fmax(m, metric_recipe);
  return m;
}

StructureResiduals structure_residuals(const SasakiStructure& S, const Point& p) {
  int d = S.eta.dim;
  StructureResiduals r;

  VecD xi = S.xi.eval(p);
  VecD eta = S.eta.value(p);
  MatD phi = S.phi.value(p);
  MatD g = S.g.eval_jets(p).values();

  r.eta_xi = std::fabs(eta.dot(xi) - 1.0);

  r.phi_xi = phi.mul(xi).max_abs();

  MatD phi2 = phi.mul(phi);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double want = -(i == j ? 1.0 : 0.0) + xi[i] * eta[j];
      r.phi_square = std::fmax(r.phi_square, std::fabs(phi2(i, j) - want));
    }

  VecD gxi = g.mul(xi);
  for (int i = 0; i < d; ++i) r.g_xi_eta = std::fmax(r.g_xi_eta, std::fabs(gxi[i] - eta[i]));

  MatD deta = exterior_derivative(S.eta, p);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0;
      for (int k = 0; k < d; ++k) s += deta(k, j) * phi(k, i);
      s += eta[i] * eta[j];
      r.metric_recipe = std::fmax(r.metric_recipe, std::fabs(g(i, j) - s));
    }
  return r;
}

VecD pullback_form(const OneFormField& w, const Point& image, const MatD& jac) {
  VecD v = w.value(image);
  VecD out(jac.n);
  for (int i = 0; i < jac.n; ++i) {
    double s = 0;
    for (int j = 0; j < jac.n; ++j) s += jac(j, i) * v[j];
    out[i] = s;
  }
  return out;
}

MatD pullback_metric(const MetricField& g, const Point& image, const MatD& jac) {
  MatD G = g.eval_jets(image).values();
  return jac.transpose().mul(G).mul(jac);
}

MatD pullback_endo(const EndoField& phi, const Point& image, const MatD& jac) {
  MatD P = phi.value(image);
  return inverse(jac).mul(P).mul(jac);
}

} // namespace heiscr::heisenberg
