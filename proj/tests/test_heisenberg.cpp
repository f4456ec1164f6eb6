#include <doctest.h>

#include <cmath>

#include "heiscr/heisenberg.hpp"
#include "heiscr/sampling.hpp"
#include "heiscr/tensor.hpp"

using namespace heiscr;
using namespace heiscr::heisenberg;

namespace {

// Matrix-group oracle: embed (x,y,z) as the (n+2)x(n+2) unipotent matrix
// [[1, x^t, z], [0, I, y], [0, 0, 1]] and multiply. Test-only.
struct UniMat {
  int n;
  std::vector<double> a; // (n+2)^2 row-major

  explicit UniMat(const GroupElement& p) : n(p.n), a(static_cast<size_t>((p.n + 2) * (p.n + 2)), 0.0) {
    int m = n + 2;
    for (int i = 0; i < m; ++i) at(i, i) = 1.0;
    for (int i = 0; i < n; ++i) {
      at(0, 1 + i) = p.x(i);
      at(1 + i, m - 1) = p.y(i);
    }
    at(0, m - 1) = p.z();
  }
  double& at(int i, int j) { return a[static_cast<size_t>(i * (n + 2) + j)]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i * (n + 2) + j)]; }

  GroupElement to_group() const {
    GroupElement p(n);
    int m = n + 2;
    for (int i = 0; i < n; ++i) {
      p.x(i) = at(0, 1 + i);
      p.y(i) = at(1 + i, m - 1);
    }
    p.z() = at(0, m - 1);
    return p;
  }
};

GroupElement matrix_mul_oracle(const GroupElement& p, const GroupElement& q) {
  UniMat A(p), B(q), C(p);
  int m = p.n + 2;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0;
      for (int k = 0; k < m; ++k) s += A.at(i, k) * B.at(k, j);
      C.at(i, j) = s;
    }
  return C.to_group();
}

GroupElement dyadic_point(int n, Rng& rng) {
  GroupElement p(n);
  for (int i = 0; i < p.dim(); ++i) p.c.a[static_cast<size_t>(i)] = rng.uniform_int(-16, 16) / 4.0;
  return p;
}

bool same_point(const Point& a, const Point& b, double tol = 0.0) {
  for (int i = 0; i < a.dim(); ++i)
    if (std::fabs(a.c[i] - b.c[i]) > tol) return false;
  return true;
}

} // namespace

TEST_CASE("group law matches the unipotent matrix product") {
  GroupElement p = Point::xyz(1, 2, 3), q = Point::xyz(4, 5, 6);
  GroupElement r = mul(p, q);
  CHECK(r.x(0) == 5.0);
  CHECK(r.y(0) == 7.0);
  CHECK(r.z() == 14.0);

  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 3;
    GroupElement a = dyadic_point(n, rng), b = dyadic_point(n, rng);
    CHECK(same_point(mul(a, b), matrix_mul_oracle(a, b)));
  }
}

TEST_CASE("identity, inverse, associativity are exact on dyadic inputs") {
  Rng rng(57);
  for (int t = 0; t < 25; ++t) {
    int n = 1 + t % 3;
    GroupElement p = dyadic_point(n, rng), q = dyadic_point(n, rng), r = dyadic_point(n, rng);
    CHECK(same_point(mul(p, identity(n)), p));
    CHECK(same_point(mul(identity(n), p), p));
    CHECK(same_point(mul(p, inv(p)), identity(n)));
    CHECK(same_point(inv(inv(p)), p));
    CHECK(same_point(mul(mul(p, q), r), mul(p, mul(q, r))));
  }
  GroupElement p = Point::xyz(1, 2, 3);
  GroupElement pi = inv(p);
  CHECK(pi.x(0) == -1.0);
  CHECK(pi.y(0) == -2.0);
  CHECK(pi.z() == -1.0);
  CHECK_THROWS(mul(Point(1), Point(2)));
}

TEST_CASE("dilation is a group automorphism fixing the origin") {
  Point p = Point::xyz(1, 1, 1);
  Point d = dilation(2.0, p);
  CHECK(d.x(0) == 2.0);
  CHECK(d.y(0) == 2.0);
  CHECK(d.z() == 4.0);
  CHECK(same_point(dilation(1.0, p), p));
  CHECK_THROWS(dilation(0.0, p));
  CHECK_THROWS(dilation(-2.0, p));

  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    int n = 1 + t % 2;
    GroupElement a = dyadic_point(n, rng), b = dyadic_point(n, rng);
    CHECK(same_point(dilation(3.0, mul(a, b)), mul(dilation(3.0, a), dilation(3.0, b))));
  }
}

TEST_CASE("involution swaps the models") {
  Point p = Point::xyz(1, 2, 3);
  Point q = involution(p);
  CHECK(q.x(0) == 2.0);
  CHECK(q.y(0) == 1.0);
  CHECK(q.z() == 3.0);
  CHECK(same_point(involution(q), p));

  // Jacobian of the swap is a permutation with determinant (-1)^n.
  for (int n : {1, 2, 3}) {
    MatD J(2 * n + 1);
    for (int i = 0; i < n; ++i) {
      J(x_index(n, i), y_index(n, i)) = 1.0;
      J(y_index(n, i), x_index(n, i)) = 1.0;
    }
    J(z_index(n), z_index(n)) = 1.0;
    CHECK(determinant(J) == doctest::Approx(n % 2 == 0 ? 1.0 : -1.0));
  }
}

TEST_CASE("involution pulls the left structure back to the right structure") {
  for (int n : {1, 2}) {
    auto SR = standard_structure(Model::Right, n);
    auto SL = standard_structure(Model::Left, n);
    MatD J(2 * n + 1);
    for (int i = 0; i < n; ++i) {
      J(x_index(n, i), y_index(n, i)) = 1.0;
      J(y_index(n, i), x_index(n, i)) = 1.0;
    }
    J(z_index(n), z_index(n)) = 1.0;
    auto pts = sample_ball(n, 6, 71);
    for (auto& p : pts) {
      Point ip = involution(p);
      VecD pulled_eta_v = pullback_form(SL.eta, ip, J);
      VecD eta_r = SR.eta.value(p);
      for (int i = 0; i < p.dim(); ++i)
        CHECK(pulled_eta_v[i] == doctest::Approx(eta_r[i]).epsilon(1e-14));

      MatD pulled_g = pullback_metric(SL.g, ip, J);
      MatD gr = SR.g.eval_jets(p).values();
      CHECK((pulled_g - gr).max_abs() < 1e-13);

      MatD pulled_phi = pullback_endo(SL.phi, ip, J);
      MatD phir = SR.phi.value(p);
      CHECK((pulled_phi - phir).max_abs() < 1e-13);
    }
  }
}

TEST_CASE("standard structures satisfy the contact metric identities") {
  for (int n : {1, 2, 3}) {
    for (auto model : {Model::Right, Model::Left, Model::Intermediate}) {
      auto S = standard_structure(model, n);
      auto pts = sample_ball(n, 8, 13u * static_cast<uint64_t>(n) + 1);
      for (auto& p : pts) CHECK(structure_residuals(S, p).max() < 1e-12);
    }
  }
  CHECK_THROWS(standard_structure(Model::Right, 0));
  CHECK_THROWS(standard_structure(Model::Deformed, 1));
}

TEST_CASE("right metric closed form at chosen points") {
  auto S = standard_structure(Model::Right, 1);
  MatD g0 = S.g.eval_jets(Point::xyz(0, 0, 0)).values();
  CHECK((g0 - MatD::identity(3)).max_abs() == 0.0);
  MatD g1 = S.g.eval_jets(Point::xyz(0, 1, 0)).values();
  CHECK(g1(0, 0) == doctest::Approx(2.0)); // 1 + y^2
  CHECK(g1(0, 2) == doctest::Approx(-1.0));

  auto pts = sample_ball(1, 10, 3);
  for (auto& p : pts) CHECK(S.eta.apply(p, S.xi.eval(p)) == doctest::Approx(1.0));
}

TEST_CASE("flipping the sign of Phi breaks tamedness of the recipe") {
  auto S = standard_structure(Model::Right, 1);
  SasakiStructure bad = S;
  auto poly = *S.phi.poly;
  for (auto& row : poly)
    for (auto& e : row) e = Rational(-1) * e;
  bad.phi = EndoField::from_polys(poly);
  CHECK(structure_residuals(bad, Point::xyz(0.5, -0.7, 0.2)).metric_recipe > 0.5);
}

TEST_CASE("frames span the kernel of the contact form") {
  for (int n : {1, 2}) {
    auto SR = standard_structure(Model::Right, n);
    auto SL = standard_structure(Model::Left, n);
    auto pts = sample_ball(n, 5, 41);
    for (auto& p : pts)
      for (int i = 0; i < n; ++i) {
        CHECK(SR.eta.apply(p, frame_V_right(n, i).eval(p)) == 0.0);
        CHECK(SR.eta.apply(p, frame_U_right(n, i).eval(p)) == 0.0);
        CHECK(SL.eta.apply(p, frame_V_left(n, i).eval(p)) == 0.0);
        CHECK(SL.eta.apply(p, frame_U_left(n, i).eval(p)) == 0.0);
      }
  }
}

TEST_CASE("contact forms are invariant under their own translations only") {
  Rng rng(83);
  for (int n : {1, 2}) {
    auto SR = standard_structure(Model::Right, n);
    auto SL = standard_structure(Model::Left, n);
    for (int t = 0; t < 6; ++t) {
      GroupElement h = dyadic_point(n, rng);
      Point p = sample_ball(n, 1, 100u + static_cast<uint64_t>(t), 2.0, false)[0];

      // right translation R_h(p) = p*h leaves eta^R alone
      Point prh = mul(p, h);
      VecD pulled = pullback_form(SR.eta, prh, right_translation_jacobian(h));
      VecD base = SR.eta.value(p);
      for (int i = 0; i < p.dim(); ++i) CHECK(pulled[i] == doctest::Approx(base[i]).epsilon(1e-14));

      // left translation L_h(p) = h*p leaves eta^L alone
      Point plh = mul(h, p);
      VecD pulledl = pullback_form(SL.eta, plh, left_translation_jacobian(h));
      VecD basel = SL.eta.value(p);
      for (int i = 0; i < p.dim(); ++i) CHECK(pulledl[i] == doctest::Approx(basel[i]).epsilon(1e-14));

      // but eta^L is generally not invariant under right translation
      bool h_nontrivial = false;
      for (int i = 0; i < n; ++i)
        if (h.x(i) != 0.0 || h.y(i) != 0.0) h_nontrivial = true;
      if (h_nontrivial) {
        VecD wrong = pullback_form(SL.eta, prh, right_translation_jacobian(h));
        VecD basewrong = SL.eta.value(p);
        double diff = 0;
        for (int i = 0; i < p.dim(); ++i) diff = std::max(diff, std::fabs(wrong[i] - basewrong[i]));
        CHECK(diff > 1e-9);
      }
    }
  }
}

TEST_CASE("polarized model: its contact form is invariant under its right action") {
  int n = 2;
  auto S = standard_structure(Model::Intermediate, n);
  Rng rng(19);
  for (int t = 0; t < 6; ++t) {
    GroupElement h = dyadic_point(n, rng);
    Point p = dyadic_point(n, rng);
    Point ph = mul_polarized(p, h);
    VecD pulled = pullback_form(S.eta, ph, right_translation_jacobian_polarized(h));
    VecD base = S.eta.value(p);
    for (int i = 0; i < p.dim(); ++i) CHECK(pulled[i] == doctest::Approx(base[i]).epsilon(1e-13));
  }
}

TEST_CASE("involution is a group anti-automorphism") {
  // iota(a b) = iota(b) iota(a); this is what carries the left model's CC
  // geometry onto the right model's.
  Rng rng(271);
  for (int n : {1, 2, 3}) {
    for (int t = 0; t < 8; ++t) {
      GroupElement a = dyadic_point(n, rng), b = dyadic_point(n, rng);
      CHECK(same_point(involution(mul(a, b)), mul(involution(b), involution(a))));
    }
  }
}

TEST_CASE("reeb field is Killing for all three models") {
  for (auto model : {Model::Right, Model::Left, Model::Intermediate}) {
    auto S = standard_structure(model, 1);
    auto pts = sample_ball(1, 5, 7);
    for (auto& p : pts) CHECK(killing_residual(S.g, S.xi, p) < 1e-10);
  }
}

TEST_CASE("automorphisms preserve the orientation of the contact bundle") {
  int n = 1;
  auto S = standard_structure(Model::Right, n);
  Rng rng(11);

  auto d_orientation = [&](const Point& p, const Point& image, const MatD& J) {
    // Express dphi(V), dphi(U) in the frame (V, U, xi) at the image point and
    // return the determinant of the horizontal 2x2 block.
    VecD v = J.mul(frame_V_right(n, 0).eval(p));
    VecD u = J.mul(frame_U_right(n, 0).eval(p));
    MatD frame(3);
    VecD fv = frame_V_right(n, 0).eval(image);
    VecD fu = frame_U_right(n, 0).eval(image);
    VecD fxi = S.xi.eval(image);
    for (int i = 0; i < 3; ++i) {
      frame(i, 0) = fv[i];
      frame(i, 1) = fu[i];
      frame(i, 2) = fxi[i];
    }
    MatD inv_frame = inverse(frame);
    VecD cv = inv_frame.mul(v), cu = inv_frame.mul(u);
    return cv[0] * cu[1] - cv[1] * cu[0];
  };

  for (int t = 0; t < 5; ++t) {
    Point p = dyadic_point(n, rng);
    GroupElement h = dyadic_point(n, rng);
    CHECK(d_orientation(p, mul(p, h), right_translation_jacobian(h)) > 0);

    double lam = 0.5 + rng.uniform(0, 2);
    MatD Jd(3);
    Jd(0, 0) = lam;
    Jd(1, 1) = lam;
    Jd(2, 2) = lam * lam;
    CHECK(d_orientation(p, dilation(lam, p), Jd) > 0);

    // rotation generated by the unitary torus: finite-difference Jacobian of
    // the closed-form flow map of X_11 (shown exact elsewhere)
    double th = rng.uniform(0, 3);
    auto rot = [&](const Point& q) {
      Point r(1);
      double c = std::cos(2 * th), s = std::sin(2 * th);
      r.x(0) = c * q.x(0) - s * q.y(0);
      r.y(0) = s * q.x(0) + c * q.y(0);
      double x0 = q.x(0), y0 = q.y(0);
      r.z() = q.z() + (x0 * x0 - y0 * y0) * std::sin(4 * th) / 4.0 +
              x0 * y0 * (std::cos(4 * th) - 1.0) / 2.0;
      return r;
    };
    MatD Jr(3);
    double h_fd = 1e-6;
    for (int j = 0; j < 3; ++j) {
      Point qp = p, qm = p;
      qp.c.a[static_cast<size_t>(j)] += h_fd;
      qm.c.a[static_cast<size_t>(j)] -= h_fd;
      Point rp = rot(qp), rm = rot(qm);
      for (int i = 0; i < 3; ++i) Jr(i, j) = (rp.c[i] - rm.c[i]) / (2 * h_fd);
    }
    CHECK(d_orientation(p, rot(p), Jr) > 1e-6);
  }
}
