#include <doctest.h>

#include <cmath>

#include "heiscr/cr_algebra.hpp"
#include "heiscr/ode.hpp"
#include "heiscr/sampling.hpp"
#include "heiscr/tensor.hpp"

using namespace heiscr;
using namespace heiscr::cr_algebra;
namespace heis = heiscr::heisenberg;

namespace {

int basis_index(const std::vector<CRBasisElement>& B, const std::string& name) {
  for (size_t i = 0; i < B.size(); ++i)
    if (B[i].name == name) return static_cast<int>(i);
  return -1;
}

} // namespace

TEST_CASE("basis has n^2+2n+2 elements with the printed fields") {
  CHECK(basis(1).size() == 5);
  CHECK(basis(2).size() == 10);
  CHECK(basis(3).size() == 17);
  CHECK_THROWS(basis(0));
  CHECK_THROWS(basis(5));

  auto B = basis(1);
  int d = 3;
  // X11 = 2x d/dy - 2y d/dx + (x^2-y^2) d/dz
  int xi11 = basis_index(B, "X11");
  REQUIRE(xi11 >= 0);
  const auto& f = B[static_cast<size_t>(xi11)].field;
  CHECK(f.comp[1] == Polynomial::variable(d, 0, Rational(2)));
  CHECK(f.comp[0] == Polynomial::variable(d, 1, Rational(-2)));
  Polynomial zexp = Polynomial::variable(d, 0) * Polynomial::variable(d, 0) -
                    Polynomial::variable(d, 1) * Polynomial::variable(d, 1);
  CHECK(f.comp[2] == zexp);
}

TEST_CASE("hamiltonian fields reproduce the basis and invert eta-pairing") {
  int n = 1, d = 3;
  auto B = basis(n);

  PolyVectorField from_one = hamiltonian_field(Polynomial::constant(d, 1), n);
  CHECK(from_one == B[static_cast<size_t>(basis_index(B, "xi"))].field);

  PolyVectorField from_x = hamiltonian_field(Polynomial::variable(d, 0), n);
  CHECK(from_x == B[static_cast<size_t>(basis_index(B, "S1"))].field);

  PolyVectorField from_my = hamiltonian_field(Polynomial::variable(d, 1, Rational(-1)), n);
  CHECK(from_my == B[static_cast<size_t>(basis_index(B, "R1"))].field);

  // eta(hamiltonian_field(F)) = F exactly, here for a messier polynomial
  Polynomial F = Polynomial::variable(d, 0) * Polynomial::variable(d, 2) +
                 Rational(3, 7) * (Polynomial::variable(d, 1) * Polynomial::variable(d, 1));
  PolyVectorField X = hamiltonian_field(F, n);
  auto eta = heis::eta_right(n);
  Polynomial paired(d);
  for (int k = 0; k < d; ++k) paired = paired + (*eta.poly)[static_cast<size_t>(k)] * X.comp[static_cast<size_t>(k)];
  CHECK(paired == F);

  // generated fields are infinitesimal contact transformations
  auto S = heis::standard_structure(heis::Model::Right, n);
  for (auto& p : sample_ball(n, 5, 31)) {
    auto [rc, rj] = cr_residual(X, S, p);
    (void)rj; // F is not CR-compatible in general, only contact
    CHECK(rc < 1e-12);
  }
}

TEST_CASE("bracket table entries match hand expansions") {
  for (int n : {1, 2}) {
    auto B = basis(n);
    auto t = bracket_table(n);
    int N = t.dim;
    auto idx = [&](const std::string& s) { return basis_index(B, s); };

    // [R_i, S_j] = delta_ij xi
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int a = idx("R" + std::to_string(i + 1));
        int b = idx("S" + std::to_string(j + 1));
        for (int k = 0; k < N; ++k) {
          Rational want = (k == idx("xi") && i == j) ? Rational(1) : Rational(0);
          CHECK(t.at(a, b, k) == want);
        }
      }

    // [xi, X_ij] = 0
    for (auto& e : B)
      if (e.tag == CRBasisElement::Tag::X) {
        int b = basis_index(B, e.name);
        for (int k = 0; k < N; ++k) CHECK(t.at(idx("xi"), b, k) == Rational(0));
      }

    // [D, S_i] = -S_i and [D, xi] = -2 xi
    for (int i = 0; i < n; ++i) {
      int b = idx("S" + std::to_string(i + 1));
      for (int k = 0; k < N; ++k)
        CHECK(t.at(idx("D"), b, k) == (k == b ? Rational(-1) : Rational(0)));
    }
    for (int k = 0; k < N; ++k)
      CHECK(t.at(idx("D"), idx("xi"), k) == (k == idx("xi") ? Rational(-2) : Rational(0)));

    // [X11, R1] = -2 S1, [D, X11] = 0
    for (int k = 0; k < N; ++k) {
      CHECK(t.at(idx("X11"), idx("R1"), k) == (k == idx("S1") ? Rational(-2) : Rational(0)));
      CHECK(t.at(idx("D"), idx("X11"), k) == Rational(0));
    }
  }
}

TEST_CASE("structure constants are antisymmetric and satisfy Jacobi exactly") {
  for (int n : {1, 2, 3}) {
    auto t = bracket_table(n);
    CHECK(t.dim == n * n + 2 * n + 2);
    CHECK(t.antisymmetric());
    CHECK(t.jacobi());
  }
}

TEST_CASE("heisenberg ideal and u(n)+R quotient") {
  for (int n : {1, 2, 3}) {
    auto chk = verify_ideal(n);
    CHECK(chk.heis_is_ideal);
    CHECK(chk.d_central_in_quotient);
    CHECK(chk.quotient_matches_un);
    CHECK(chk.witness.empty());
  }
}

TEST_CASE("every basis field is an infinitesimal CR transformation") {
  for (int n : {1, 2, 3}) {
    auto S = heis::standard_structure(heis::Model::Right, n);
    auto B = basis(n);
    auto pts = sample_ball(n, 12, 1000u + static_cast<uint64_t>(n));
    for (auto& e : B)
      for (auto& p : pts) {
        auto [rc, rj] = cr_residual(e.field, S, p);
        CHECK(rc < 1e-9);
        CHECK(rj < 1e-9);
      }
  }
}

TEST_CASE("a field outside the algebra has a large CR residual") {
  int n = 1;
  auto S = heis::standard_structure(heis::Model::Right, n);
  PolyVectorField bad(n); // x d/dx
  bad.comp[0] = Polynomial::variable(3, 0);
  Point p = Point::xyz(1, 1, 1);
  auto [rc, rj] = cr_residual(bad, S, p);
  CHECK(std::max(rc, rj) > 1e-3);
}

TEST_CASE("flows: translation, dilation fixed point, rotation period") {
  int n = 1;
  auto B1 = basis(1);
  // xi flow is vertical translation
  Point p0 = Point::xyz(0.3, -0.2, 0.9);
  Point pt = flow(B1[static_cast<size_t>(basis_index(B1, "xi"))].field, p0, 2.5);
  CHECK(pt.x(0) == doctest::Approx(p0.x(0)).epsilon(1e-12));
  CHECK(pt.y(0) == doctest::Approx(p0.y(0)).epsilon(1e-12));
  CHECK(pt.z() == doctest::Approx(p0.z() + 2.5).epsilon(1e-12));

  // D flow fixes the origin
  Point origin(1);
  Point dflow = flow(B1[static_cast<size_t>(basis_index(B1, "D"))].field, origin, 3.0);
  CHECK(dflow.c.max_abs() < 1e-12);

  // X12 flow (n=2) is 2pi-periodic through sines and cosines
  auto B2 = basis(2);
  int x12 = basis_index(B2, "X12");
  REQUIRE(x12 >= 0);
  Point q0(2);
  q0.x(0) = 1.0;
  Point qt = flow(B2[static_cast<size_t>(x12)].field, q0, 0.7);
  CHECK(qt.x(0) == doctest::Approx(std::cos(0.7)).epsilon(1e-9));
  CHECK(qt.y(1) == doctest::Approx(std::sin(0.7)).epsilon(1e-9));
  CHECK(std::fabs(qt.x(1)) < 1e-9);
  CHECK(std::fabs(qt.y(0)) < 1e-9);
  CHECK(std::fabs(qt.z()) < 1e-9);
  Point qper = flow(B2[static_cast<size_t>(x12)].field, q0, 2.0 * M_PI);
  for (int i = 0; i < q0.dim(); ++i) CHECK(std::fabs(qper.c[i] - q0.c[i]) < 1e-7);
  (void)n;
}

TEST_CASE("the dimension ceiling n = 4 works end to end") {
  auto B = basis(4);
  CHECK(B.size() == 26);
  auto t = bracket_table(4);
  CHECK(t.dim == 26);
  CHECK(t.antisymmetric());
  CHECK(t.jacobi());
  auto chk = verify_ideal(t, B);
  CHECK(chk.ok());

  auto S = heis::standard_structure(heis::Model::Right, 4);
  Point p = sample_ball(4, 1, 77, 2.0, false)[0];
  CHECK(heis::structure_residuals(S, p).max() < 1e-12);
  CHECK(std::fabs(curvature(S.g_sasaki, p).scalar + 8.0) < 1e-8);
}

TEST_CASE("integrator reports blowup instead of looping") {
  // x' = x^2 leaves [0, t] integrable only up to t = 1 from x(0) = 1
  PolyVectorField f(1);
  f.comp[0] = Polynomial::variable(3, 0) * Polynomial::variable(3, 0);
  Point p0 = Point::xyz(1, 0, 0);
  CHECK_THROWS(flow(f, p0, 1.5));
}

TEST_CASE("positivity region of the cone is convex on samples") {
  // eta(a0 xi + sum b_i X_ii) = a0 + sum b_i r_i^2; convex combinations of
  // positive elements stay positive at every sampled point.
  int n = 2;
  Rng rng(77);
  auto B = basis(n);
  std::vector<PolyVectorField> gens;
  gens.push_back(B[0].field);
  for (auto& e : B)
    if (e.tag == CRBasisElement::Tag::X && e.i == e.j) gens.push_back(e.field);
  auto eta = heis::eta_right(n);
  auto pts = sample_ball(n, 20, 555);
  for (int trial = 0; trial < 10; ++trial) {
    auto pick = [&]() {
      PolyVectorField f = gens[0]; // positive multiple of xi
      f = Rational(rng.uniform_int(1, 3)) * f;
      for (size_t g = 1; g < gens.size(); ++g)
        f = f + Rational(rng.uniform_int(0, 3)) * gens[g];
      return f;
    };
    PolyVectorField xi1 = pick(), xi2 = pick();
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (auto& p : pts) {
        double v1 = eta.apply(p, xi1.eval(p));
        double v2 = eta.apply(p, xi2.eval(p));
        CHECK(v1 > 0);
        CHECK(v2 > 0);
        CHECK(t * v1 + (1 - t) * v2 > 0);
      }
    }
  }
}
