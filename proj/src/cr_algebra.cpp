#include "heiscr/cr_algebra.hpp"

#include <map>
#include <stdexcept>

#include "heiscr/tensor.hpp"

namespace heiscr::cr_algebra {

namespace {

Polynomial var(int d, int k, Rational c = 1) { return Polynomial::variable(d, k, c); }

} // namespace

std::vector<CRBasisElement> basis(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("cr_algebra::basis: n out of range");
  int d = 2 * n + 1;
  std::vector<CRBasisElement> out;

  CRBasisElement xi{CRBasisElement::Tag::Xi, 0, 0, "xi", PolyVectorField(n)};
  xi.field.comp[static_cast<size_t>(z_index(n))] = Polynomial::constant(d, 1);
  out.push_back(xi);

  for (int i = 0; i < n; ++i) {
    CRBasisElement R{CRBasisElement::Tag::R, i, 0, "R" + std::to_string(i + 1), PolyVectorField(n)};
    R.field.comp[static_cast<size_t>(x_index(n, i))] = Polynomial::constant(d, 1);
    out.push_back(R);
  }
  for (int i = 0; i < n; ++i) {
    CRBasisElement S{CRBasisElement::Tag::S, i, 0, "S" + std::to_string(i + 1), PolyVectorField(n)};
    S.field.comp[static_cast<size_t>(y_index(n, i))] = Polynomial::constant(d, 1);
    S.field.comp[static_cast<size_t>(z_index(n))] = var(d, x_index(n, i));
    out.push_back(S);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      CRBasisElement X{CRBasisElement::Tag::X, i, j,
                       "X" + std::to_string(i + 1) + std::to_string(j + 1), PolyVectorField(n)};
      auto& f = X.field;
      f.comp[static_cast<size_t>(y_index(n, j))] =
          f.comp[static_cast<size_t>(y_index(n, j))] + var(d, x_index(n, i));
      f.comp[static_cast<size_t>(y_index(n, i))] =
          f.comp[static_cast<size_t>(y_index(n, i))] + var(d, x_index(n, j));
      f.comp[static_cast<size_t>(x_index(n, j))] =
          f.comp[static_cast<size_t>(x_index(n, j))] + var(d, y_index(n, i), Rational(-1));
      f.comp[static_cast<size_t>(x_index(n, i))] =
          f.comp[static_cast<size_t>(x_index(n, i))] + var(d, y_index(n, j), Rational(-1));
      f.comp[static_cast<size_t>(z_index(n))] =
          var(d, x_index(n, i)) * var(d, x_index(n, j)) -
          var(d, y_index(n, i)) * var(d, y_index(n, j));
      out.push_back(X);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CRBasisElement Y{CRBasisElement::Tag::Y, i, j,
                       "Y" + std::to_string(i + 1) + std::to_string(j + 1), PolyVectorField(n)};
      auto& f = Y.field;
      f.comp[static_cast<size_t>(x_index(n, j))] = var(d, x_index(n, i));
      f.comp[static_cast<size_t>(x_index(n, i))] = var(d, x_index(n, j), Rational(-1));
      f.comp[static_cast<size_t>(y_index(n, j))] = var(d, y_index(n, i));
      f.comp[static_cast<size_t>(y_index(n, i))] = var(d, y_index(n, j), Rational(-1));
      out.push_back(Y);
    }

  CRBasisElement D{CRBasisElement::Tag::Dil, 0, 0, "D", PolyVectorField(n)};
  D.field.comp[static_cast<size_t>(z_index(n))] = var(d, z_index(n), Rational(2));
  for (int k = 0; k < n; ++k) {
    D.field.comp[static_cast<size_t>(x_index(n, k))] = var(d, x_index(n, k));
    D.field.comp[static_cast<size_t>(y_index(n, k))] = var(d, y_index(n, k));
  }
  out.push_back(D);

  return out;
}

PolyVectorField hamiltonian_field(const Polynomial& F, int n) {
  int d = 2 * n + 1;
  PolyVectorField X(n);
  Polynomial zcomp = F;
  for (int i = 0; i < n; ++i) {
    Polynomial Fy = F.derivative(y_index(n, i));
    zcomp = zcomp - var(d, y_index(n, i)) * Fy;
    X.comp[static_cast<size_t>(x_index(n, i))] = Rational(-1) * Fy;
    X.comp[static_cast<size_t>(y_index(n, i))] =
        var(d, y_index(n, i)) * F.derivative(z_index(n)) + F.derivative(x_index(n, i));
  }
  X.comp[static_cast<size_t>(z_index(n))] = zcomp;
  return X;
}

// ---------------------------------------------------------------------------
// Exact linear algebra over the rationals for the bracket table.

namespace {

using RatMat = std::vector<std::vector<Rational>>;

RatMat rat_inverse(const RatMat& m) {
  int N = static_cast<int>(m.size());
  RatMat a = m;
  RatMat inv(static_cast<size_t>(N), std::vector<Rational>(static_cast<size_t>(N), Rational(0)));
  for (int i = 0; i < N; ++i) inv[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  for (int col = 0; col < N; ++col) {
    int piv = -1;
    for (int r = col; r < N; ++r)
      if (!a[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("rat_inverse: singular matrix");
    std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(col)]);
    std::swap(inv[static_cast<size_t>(piv)], inv[static_cast<size_t>(col)]);
    Rational dm = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int j = 0; j < N; ++j) {
      a[static_cast<size_t>(col)][static_cast<size_t>(j)] /= dm;
      inv[static_cast<size_t>(col)][static_cast<size_t>(j)] /= dm;
    }
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f.is_zero()) continue;
      for (int j = 0; j < N; ++j) {
        a[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
            f * a[static_cast<size_t>(col)][static_cast<size_t>(j)];
        inv[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
            f * inv[static_cast<size_t>(col)][static_cast<size_t>(j)];
      }
    }
  }
  return inv;
}

struct RowKey {
  int coord;
  Monomial mono;
  friend bool operator<(const RowKey& a, const RowKey& b) {
    if (a.coord != b.coord) return a.coord < b.coord;
    return a.mono < b.mono;
  }
};

struct BasisSolver {
  int N = 0;
  std::map<RowKey, int> rows;
  std::vector<std::vector<Rational>> A; // R x N
  std::vector<int> pivot_rows;          // N original row indices
  RatMat Pinv;

  explicit BasisSolver(const std::vector<CRBasisElement>& B) {
    N = static_cast<int>(B.size());
    int d = B[0].field.dim();
    for (auto& e : B)
      for (int k = 0; k < d; ++k)
        for (auto& [m, c] : e.field.comp[static_cast<size_t>(k)].terms()) {
          (void)c;
          rows.try_emplace(RowKey{k, m}, 0);
        }
    int idx = 0;
    for (auto& [key, v] : rows) v = idx++;
    int R = idx;
    A.assign(static_cast<size_t>(R), std::vector<Rational>(static_cast<size_t>(N), Rational(0)));
    for (int b = 0; b < N; ++b)
      for (int k = 0; k < d; ++k)
        for (auto& [m, c] : B[static_cast<size_t>(b)].field.comp[static_cast<size_t>(k)].terms())
          A[static_cast<size_t>(rows.at(RowKey{k, m}))][static_cast<size_t>(b)] = c;

    // Forward elimination on a copy to find N independent rows.
    auto work = A;
    std::vector<int> origin(static_cast<size_t>(R));
    for (int r = 0; r < R; ++r) origin[static_cast<size_t>(r)] = r;
    int rank = 0;
    for (int col = 0; col < N; ++col) {
      int piv = -1;
      for (int r = rank; r < R; ++r)
        if (!work[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) throw std::runtime_error("basis fields are linearly dependent");
      std::swap(work[static_cast<size_t>(piv)], work[static_cast<size_t>(rank)]);
      std::swap(origin[static_cast<size_t>(piv)], origin[static_cast<size_t>(rank)]);
      for (int r = rank + 1; r < R; ++r) {
        Rational f = work[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                     work[static_cast<size_t>(rank)][static_cast<size_t>(col)];
        if (f.is_zero()) continue;
        for (int j = col; j < N; ++j)
          work[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
              f * work[static_cast<size_t>(rank)][static_cast<size_t>(j)];
      }
      pivot_rows.push_back(origin[static_cast<size_t>(rank)]);
      ++rank;
    }
    RatMat P(static_cast<size_t>(N), std::vector<Rational>(static_cast<size_t>(N), Rational(0)));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        P[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            A[static_cast<size_t>(pivot_rows[static_cast<size_t>(i)])][static_cast<size_t>(j)];
    Pinv = rat_inverse(P);
  }

  /// Expand a polynomial field exactly in the basis; throws on failure.
  std::vector<Rational> expand(const PolyVectorField& f, const std::string& what) const {
    int d = f.dim();
    std::vector<Rational> rhs(rows.size(), Rational(0));
    for (int k = 0; k < d; ++k)
      for (auto& [m, c] : f.comp[static_cast<size_t>(k)].terms()) {
        auto it = rows.find(RowKey{k, m});
        if (it == rows.end())
          throw std::runtime_error("bracket does not close on the basis: " + what);
        rhs[static_cast<size_t>(it->second)] = c;
      }
    std::vector<Rational> coef(static_cast<size_t>(N), Rational(0));
    for (int i = 0; i < N; ++i) {
      Rational s = 0;
      for (int j = 0; j < N; ++j)
        s += Pinv[static_cast<size_t>(i)][static_cast<size_t>(j)] *
             rhs[static_cast<size_t>(pivot_rows[static_cast<size_t>(j)])];
      coef[static_cast<size_t>(i)] = s;
    }
    // Consistency over all rows, not just the pivots.
    for (auto& [key, r] : rows) {
      (void)key;
      Rational s = 0;
      for (int j = 0; j < N; ++j)
        s += A[static_cast<size_t>(r)][static_cast<size_t>(j)] * coef[static_cast<size_t>(j)];
      if (!(s == rhs[static_cast<size_t>(r)]))
        throw std::runtime_error("bracket does not close on the basis: " + what);
    }
    return coef;
  }
};

} // namespace

bool StructureConstants::antisymmetric() const {
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int k = 0; k < dim; ++k)
        if (!(at(a, b, k) == -at(b, a, k))) return false;
  return true;
}

bool StructureConstants::jacobi() const {
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      for (int cidx = b + 1; cidx < dim; ++cidx)
        for (int l = 0; l < dim; ++l) {
          Rational s = 0;
          for (int m = 0; m < dim; ++m) {
            s += at(a, b, m) * at(m, cidx, l);
            s += at(b, cidx, m) * at(m, a, l);
            s += at(cidx, a, m) * at(m, b, l);
          }
          if (!s.is_zero()) return false;
        }
  return true;
}

StructureConstants bracket_table(int n) {
  auto B = basis(n);
  BasisSolver solver(B);
  int N = solver.N;
  StructureConstants t;
  t.n = n;
  t.dim = N;
  t.c.assign(static_cast<size_t>(N * N * N), Rational(0));
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      PolyVectorField br = bracket(B[static_cast<size_t>(a)].field, B[static_cast<size_t>(b)].field);
      auto coef = solver.expand(br, "[" + B[static_cast<size_t>(a)].name + "," +
                                        B[static_cast<size_t>(b)].name + "]");
      for (int k = 0; k < N; ++k) {
        t.at(a, b, k) = coef[static_cast<size_t>(k)];
        t.at(b, a, k) = -coef[static_cast<size_t>(k)];
      }
    }
  return t;
}

// ---------------------------------------------------------------------------
// u(n) model for the quotient.

namespace {

struct CRat {
  Rational re, im;
  friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

using CMat = std::vector<std::vector<CRat>>;

CMat czero(int n) {
  return CMat(static_cast<size_t>(n), std::vector<CRat>(static_cast<size_t>(n), CRat{0, 0}));
}

CMat commutator(const CMat& a, const CMat& b) {
  int n = static_cast<int>(a.size());
  CMat r = czero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CRat s{0, 0};
      for (int k = 0; k < n; ++k)
        s = s + a[static_cast<size_t>(i)][static_cast<size_t>(k)] * b[static_cast<size_t>(k)][static_cast<size_t>(j)] -
            b[static_cast<size_t>(i)][static_cast<size_t>(k)] * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
      r[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
    }
  return r;
}

// X_ij -> i(E_ij + E_ji), Y_ij -> E_ij - E_ji.
CMat model_matrix(const CRBasisElement& e, int n) {
  CMat m = czero(n);
  if (e.tag == CRBasisElement::Tag::X) {
    m[static_cast<size_t>(e.i)][static_cast<size_t>(e.j)].im += 1;
    m[static_cast<size_t>(e.j)][static_cast<size_t>(e.i)].im += 1;
  } else if (e.tag == CRBasisElement::Tag::Y) {
    m[static_cast<size_t>(e.i)][static_cast<size_t>(e.j)].re += 1;
    m[static_cast<size_t>(e.j)][static_cast<size_t>(e.i)].re -= 1;
  }
  return m;
}

} // namespace

IdealCheck verify_ideal(const StructureConstants& t, const std::vector<CRBasisElement>& B) {
  int n = t.n;
  int N = t.dim;
  int hdim = 2 * n + 1; // xi, R_i, S_i occupy indices 0..2n
  IdealCheck res;
  res.heis_is_ideal = true;
  for (int a = 0; a < hdim && res.heis_is_ideal; ++a)
    for (int b = 0; b < N && res.heis_is_ideal; ++b)
      for (int k = hdim; k < N; ++k)
        if (!t.at(a, b, k).is_zero()) {
          res.heis_is_ideal = false;
          res.witness = "[" + B[static_cast<size_t>(a)].name + "," + B[static_cast<size_t>(b)].name +
                        "] leaves the Heisenberg ideal";
          break;
        }

  int didx = N - 1; // D is last
  res.d_central_in_quotient = true;
  for (int b = 0; b < N && res.d_central_in_quotient; ++b)
    for (int k = hdim; k < N; ++k)
      if (!t.at(didx, b, k).is_zero()) {
        res.d_central_in_quotient = false;
        res.witness = "[D," + B[static_cast<size_t>(b)].name + "] nonzero in the quotient";
        break;
      }

  // Quotient brackets of the X/Y classes against the u(n) matrix model.
  res.quotient_matches_un = true;
  for (int a = hdim; a < N - 1 && res.quotient_matches_un; ++a)
    for (int b = hdim; b < N - 1 && res.quotient_matches_un; ++b) {
      CMat lhs = commutator(model_matrix(B[static_cast<size_t>(a)], n),
                            model_matrix(B[static_cast<size_t>(b)], n));
      CMat rhs = czero(n);
      for (int k = hdim; k < N - 1; ++k) {
        if (t.at(a, b, k).is_zero()) continue;
        CMat mk = model_matrix(B[static_cast<size_t>(k)], n);
        for (int r = 0; r < n; ++r)
          for (int ccol = 0; ccol < n; ++ccol) {
            rhs[static_cast<size_t>(r)][static_cast<size_t>(ccol)].re +=
                t.at(a, b, k) * mk[static_cast<size_t>(r)][static_cast<size_t>(ccol)].re;
            rhs[static_cast<size_t>(r)][static_cast<size_t>(ccol)].im +=
                t.at(a, b, k) * mk[static_cast<size_t>(r)][static_cast<size_t>(ccol)].im;
          }
      }
      if (!t.at(a, b, didx).is_zero()) {
        res.quotient_matches_un = false;
        res.witness = "[" + B[static_cast<size_t>(a)].name + "," + B[static_cast<size_t>(b)].name +
                      "] has a D component";
        break;
      }
      for (int r = 0; r < n; ++r)
        for (int ccol = 0; ccol < n; ++ccol)
          if (!(lhs[static_cast<size_t>(r)][static_cast<size_t>(ccol)] ==
                rhs[static_cast<size_t>(r)][static_cast<size_t>(ccol)])) {
            res.quotient_matches_un = false;
            res.witness = "[" + B[static_cast<size_t>(a)].name + "," +
                          B[static_cast<size_t>(b)].name + "] disagrees with the u(n) model";
          }
    }
  return res;
}

IdealCheck verify_ideal(int n) {
  auto B = basis(n);
  auto t = bracket_table(n);
  return verify_ideal(t, B);
}

std::vector<PolyVectorField> horizontal_frames(const heisenberg::SasakiStructure& S) {
  using heisenberg::Model;
  int n = S.n;
  int d = 2 * n + 1;
  std::vector<PolyVectorField> out;
  for (int i = 0; i < n; ++i) {
    switch (S.model) {
      case Model::Right:
      case Model::Deformed: // same contact distribution as the right model
        out.push_back(heisenberg::frame_V_right(n, i));
        out.push_back(heisenberg::frame_U_right(n, i));
        break;
      case Model::Left:
        out.push_back(heisenberg::frame_V_left(n, i));
        out.push_back(heisenberg::frame_U_left(n, i));
        break;
      case Model::Intermediate: {
        PolyVectorField V(n), U(n);
        V.comp[static_cast<size_t>(x_index(n, i))] = Polynomial::constant(d, 1);
        V.comp[static_cast<size_t>(z_index(n))] = var(d, y_index(n, i), Rational(-2));
        U.comp[static_cast<size_t>(y_index(n, i))] = Polynomial::constant(d, 1);
        U.comp[static_cast<size_t>(z_index(n))] = var(d, x_index(n, i), Rational(2));
        out.push_back(V);
        out.push_back(U);
        break;
      }
    }
  }
  return out;
}

std::pair<double, double> cr_residual(const PolyVectorField& X,
                                      const heisenberg::SasakiStructure& S, const Point& p) {
  int d = S.eta.dim;
  VecD L = lie_derivative_form(X, S.eta, p);
  VecD e = S.eta.value(p);
  double res_contact = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      res_contact = std::max(res_contact, std::fabs(L[i] * e[j] - L[j] * e[i]));

  MatD phiv = S.phi.value(p);
  VecD xiv = S.xi.eval(p);
  auto proj = [&](VecD v) {
    double c = e.dot(v);
    for (int i = 0; i < d; ++i) v.a[static_cast<size_t>(i)] -= c * xiv[i];
    return v;
  };
  double res_j = 0;
  for (auto& W : horizontal_frames(S)) {
    PolyVectorField phiW = S.phi.apply_poly(W);
    VecD lhs = proj(bracket(X, phiW).eval(p));
    VecD rhs = phiv.mul(proj(bracket(X, W).eval(p)));
    for (int i = 0; i < d; ++i) res_j = std::max(res_j, std::fabs(lhs[i] - rhs[i]));
  }
  return {res_contact, res_j};
}

} // namespace heiscr::cr_algebra
