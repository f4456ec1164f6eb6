#include <doctest.h>

#include <cmath>

#include "heiscr/heisenberg.hpp"
#include "heiscr/sampling.hpp"
#include "heiscr/tensor.hpp"

using namespace heiscr;
namespace heis = heiscr::heisenberg;

namespace {

MetricField euclidean(int n) {
  int d = 2 * n + 1;
  std::vector<std::vector<Polynomial>> m(
      static_cast<size_t>(d), std::vector<Polynomial>(static_cast<size_t>(d), Polynomial(d)));
  for (int i = 0; i < d; ++i) m[i][i] = Polynomial::constant(d, 1);
  return MetricField::from_polys(m);
}

// Half-plane slab y > 0: g = y^-2 (dx^2 + dy^2) + dz^2, scalar -2.
MetricField hyperbolic_slab() {
  MetricField g;
  g.dim = 3;
  Polynomial y = Polynomial::variable(3, 1);
  Polynomial y2 = y * y;
  g.eval_jets = [y2](const Point& p) {
    JetMat m(3);
    Jet2 one = Jet2::constant(3, 1.0);
    Jet2 f = one / y2.eval_jet(p.c);
    m.at(0, 0) = f;
    m.at(1, 1) = f;
    m.at(2, 2) = one;
    return m;
  };
  return g;
}

// Stereographic round-sphere slab: g = 4 (1+x^2+y^2)^-2 (dx^2+dy^2) + dz^2,
// scalar +2.
MetricField sphere_slab() {
  MetricField g;
  g.dim = 3;
  Polynomial w(3);
  w = Polynomial::constant(3, 1) + Polynomial::variable(3, 0) * Polynomial::variable(3, 0) +
      Polynomial::variable(3, 1) * Polynomial::variable(3, 1);
  g.eval_jets = [w](const Point& p) {
    JetMat m(3);
    Jet2 jw = w.eval_jet(p.c);
    Jet2 f = Jet2::constant(3, 4.0) / (jw * jw);
    m.at(0, 0) = f;
    m.at(1, 1) = f;
    m.at(2, 2) = Jet2::constant(3, 1.0);
    return m;
  };
  return g;
}

// Independent finite-difference Christoffels (central differences on metric
// values only; shares no code with the jet pipeline).
std::vector<double> fd_christoffel(const MetricField& g, const Point& p, double h = 1e-5) {
  int d = g.dim;
  auto value_at = [&](const Point& q) { return g.eval_jets(q).values(); };
  std::vector<MatD> dg(static_cast<size_t>(d));
  for (int m = 0; m < d; ++m) {
    Point pp = p, pm = p;
    pp.c.a[static_cast<size_t>(m)] += h;
    pm.c.a[static_cast<size_t>(m)] -= h;
    MatD a = value_at(pp), b = value_at(pm);
    MatD r(d);
    for (int i = 0; i < d * d; ++i) r.a[static_cast<size_t>(i)] = (a.a[static_cast<size_t>(i)] - b.a[static_cast<size_t>(i)]) / (2 * h);
    dg[static_cast<size_t>(m)] = r;
  }
  MatD Ginv = inverse(value_at(p));
  std::vector<double> gamma(static_cast<size_t>(d * d * d), 0.0);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0;
        for (int l = 0; l < d; ++l)
          s += Ginv(k, l) * (dg[static_cast<size_t>(i)](l, j) + dg[static_cast<size_t>(j)](l, i) -
                             dg[static_cast<size_t>(l)](i, j));
        gamma[static_cast<size_t>((k * d + i) * d + j)] = 0.5 * s;
      }
  return gamma;
}

} // namespace

TEST_CASE("flat metric has vanishing curvature") {
  MetricField g = euclidean(1);
  Point p = Point::xyz(0.3, -1.1, 0.7);
  CurvatureReport rep = curvature(g, p);
  for (double v : rep.christoffel) CHECK(v == 0.0);
  CHECK(rep.scalar == 0.0);
  VecD u(3), v(3);
  u[0] = 1;
  v[1] = 1;
  CHECK(sectional(g, p, u, v) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("curvature sign convention pinned by constant-curvature surfaces") {
  Point p = Point::xyz(0.4, 1.3, 0.0);
  CHECK(curvature(hyperbolic_slab(), p).scalar == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(curvature(sphere_slab(), p).scalar == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("right-invariant structure: scalar is -2n in the Sasaki normalization") {
  // The unweighted recipe metric is the Milnor lambda=1 nilmetric with scalar
  // -n/2; its D-homothetic companion g_sasaki carries the classical values.
  for (int n : {1, 2, 3}) {
    auto S = heis::standard_structure(heis::Model::Right, n);
    auto pts = sample_ball(n, 5, 11u + static_cast<uint64_t>(n));
    for (auto& p : pts) {
      CurvatureReport rep = curvature(S.g_sasaki, p);
      CHECK(std::fabs(rep.scalar - (-2.0 * n)) < 1e-8);
      CHECK(rep.bianchi_residual < 1e-8);
      CHECK(rep.antisym_residual < 1e-8);
      CurvatureReport lit = curvature(S.g, p);
      CHECK(std::fabs(lit.scalar - (-0.5 * n)) < 1e-8);
    }
  }
}

TEST_CASE("christoffels agree with the finite-difference oracle") {
  auto S = heis::standard_structure(heis::Model::Right, 2);
  auto pts = sample_ball(2, 4, 99);
  for (auto& p : pts) {
    CurvatureReport rep = curvature(S.g, p);
    auto fd = fd_christoffel(S.g, p);
    for (size_t i = 0; i < fd.size(); ++i)
      CHECK(std::fabs(rep.christoffel[i] - fd[i]) < 1e-6);
  }
}

TEST_CASE("scalar of the right metric is invariant under block relabeling") {
  auto S = heis::standard_structure(heis::Model::Right, 2);
  Point p(2);
  p.x(0) = 0.3;
  p.x(1) = -0.8;
  p.y(0) = 1.1;
  p.y(1) = 0.2;
  p.z() = -0.5;
  Point q(2); // swap blocks 1 and 2
  q.x(0) = p.x(1);
  q.x(1) = p.x(0);
  q.y(0) = p.y(1);
  q.y(1) = p.y(0);
  q.z() = p.z();
  CHECK(curvature(S.g, p).scalar == doctest::Approx(curvature(S.g, q).scalar).epsilon(1e-11));
}

TEST_CASE("sectional curvature anchors of the right structure") {
  auto S = heis::standard_structure(heis::Model::Right, 1);
  auto pts = sample_ball(1, 4, 5);
  for (auto& p : pts) {
    VecD v = heis::frame_V_right(1, 0).eval(p);
    VecD u = S.phi.value(p).mul(v); // Phi V
    CHECK(sectional(S.g_sasaki, p, v, u) == doctest::Approx(-3.0).epsilon(1e-9));
    VecD xi = S.xi.eval(p);
    // R(X,xi)xi = X holds in the Sasaki normalization only.
    CHECK(sectional(S.g_sasaki, p, xi, v) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sectional(S.g, p, v, u) == doctest::Approx(-0.75).epsilon(1e-9));
    CHECK(sectional(S.g, p, xi, v) == doctest::Approx(0.25).epsilon(1e-9));
  }
  VecD u(3), w(3);
  u[0] = 1;
  w[0] = 2; // parallel: degenerate plane
  CHECK_THROWS(sectional(S.g, pts[0], u, w));
}

TEST_CASE("killing residuals: Reeb field is Killing, the dilation field is not") {
  auto S = heis::standard_structure(heis::Model::Right, 1);
  PolyVectorField D(1);
  D.comp[0] = Polynomial::variable(3, 0);
  D.comp[1] = Polynomial::variable(3, 1);
  D.comp[2] = Polynomial::variable(3, 2, Rational(2));
  auto pts = sample_ball(1, 6, 17);
  for (auto& p : pts) CHECK(killing_residual(S.g, S.xi, p) < 1e-10);
  CHECK(killing_residual(S.g, D, Point::xyz(1, 0, 0)) > 0.1);
  PolyVectorField zero(1);
  for (auto& p : pts) CHECK(killing_residual(S.g, zero, p) == 0.0);
}

TEST_CASE("lie derivative of the contact form") {
  auto eta = heis::eta_right(1);
  auto xi = heis::reeb_field(1);
  PolyVectorField D(1);
  D.comp[0] = Polynomial::variable(3, 0);
  D.comp[1] = Polynomial::variable(3, 1);
  D.comp[2] = Polynomial::variable(3, 2, Rational(2));
  auto pts = sample_ball(1, 5, 23);
  for (auto& p : pts) {
    CHECK(lie_derivative_form(xi, eta, p).max_abs() < 1e-14);
    // L_D eta = 2 eta
    VecD ld = lie_derivative_form(D, eta, p);
    VecD ev = eta.value(p);
    for (int i = 0; i < 3; ++i) CHECK(ld[i] == doctest::Approx(2.0 * ev[i]).epsilon(1e-12));
    CHECK(lie_derivative_form(PolyVectorField(1), eta, p).max_abs() == 0.0);
  }
}

TEST_CASE("exterior derivative of the model contact forms") {
  Point p = Point::xyz(0.7, -0.4, 0.9);
  MatD dr = exterior_derivative(heis::eta_right(1), p);
  CHECK(dr(0, 1) == doctest::Approx(1.0));
  CHECK(dr(1, 0) == doctest::Approx(-1.0));
  CHECK(dr(0, 2) == doctest::Approx(0.0));
  CHECK(dr(1, 2) == doctest::Approx(0.0));

  MatD dl = exterior_derivative(heis::eta_left(1), p);
  CHECK(dl(0, 1) == doctest::Approx(-1.0));

  // closed form dz
  std::vector<Polynomial> dz(3, Polynomial(3));
  dz[2] = Polynomial::constant(3, 1);
  CHECK(exterior_derivative(OneFormField::from_polys(dz), p).max_abs() == 0.0);
}

TEST_CASE("contact volume coefficients") {
  Point p = Point::xyz(0.2, 1.4, -0.3);
  CHECK(contact_volume(heis::eta_right(1), 1, p) == doctest::Approx(1.0));
  CHECK(std::fabs(contact_volume(heis::eta_left(1), 1, p)) == doctest::Approx(1.0));
  Point p2(2);
  p2.x(0) = 0.4;
  p2.y(1) = -1.0;
  p2.z() = 0.6;
  CHECK(std::fabs(contact_volume(heis::eta_right(2), 2, p2)) == doctest::Approx(2.0));
}
