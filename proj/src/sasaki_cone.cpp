#include "heiscr/sasaki_cone.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <cmath>
#include <stdexcept>

#include "heiscr/cr_algebra.hpp"
#include "heiscr/parallel.hpp"
#include "heiscr/sampling.hpp"
#include "heiscr/tensor.hpp"

namespace heiscr::sasaki_cone {

using heisenberg::Model;
using heisenberg::SasakiStructure;

ConeParams ConeParams::from_doubles(const std::vector<double>& v) {
  ConeParams p;
  p.a.reserve(v.size());
  for (double x : v) {
    if (x < 0) throw std::invalid_argument("ConeParams: negative weight");
    p.a.push_back(Rational::from_double(x));
  }
  std::sort(p.a.begin(), p.a.end());
  return p;
}

bool ConeParams::is_zero() const {
  for (auto& r : a)
    if (!r.is_zero()) return false;
  return true;
}

std::vector<double> ConeParams::to_doubles() const {
  std::vector<double> out;
  out.reserve(a.size());
  for (auto& r : a) out.push_back(r.to_double());
  return out;
}

PositivityResult positivity(const ConeElement& e, int n) {
  if (static_cast<int>(e.b.size()) != n)
    throw std::invalid_argument("positivity: weight count != n");
  PositivityResult r;
  if (!(e.a0 > 0)) {
    r.positive = false;
    r.witness_block = -1;
    r.witness_radius = 0.0; // eta(.) <= 0 already at the origin
    return r;
  }
  for (int i = 0; i < n; ++i)
    if (e.b[static_cast<size_t>(i)] < 0) {
      r.positive = false;
      r.witness_block = i;
      r.witness_radius = std::sqrt(e.a0 / -e.b[static_cast<size_t>(i)]) * 1.01;
      return r;
    }
  r.positive = true;
  return r;
}

ConeParams reduce(const ConeElement& e) {
  auto pos = positivity(e, static_cast<int>(e.b.size()));
  if (!pos.positive) throw std::invalid_argument("reduce: element is not positive");
  std::vector<double> scaled;
  scaled.reserve(e.b.size());
  for (double bi : e.b) scaled.push_back(bi / e.a0);
  return ConeParams::from_doubles(scaled);
}

namespace {

struct DeformedFields {
  int n;
  int d;
  Polynomial W;
  std::vector<Polynomial> dW;           // d components
  std::vector<Polynomial> eta;          // eta^R components
  std::vector<std::vector<Polynomial>> deta; // d_r eta_j (constants)
  std::vector<std::vector<Polynomial>> phi;  // right-model Phi
  std::vector<Polynomial> phi_xi_a;     // Phi applied to xi_a
};

DeformedFields build_fields(const ConeParams& a, int n) {
  DeformedFields F;
  F.n = n;
  F.d = 2 * n + 1;
  int d = F.d;

  F.W = Polynomial::constant(d, 1);
  for (int i = 0; i < n; ++i) {
    Polynomial xi2 = Polynomial::variable(d, x_index(n, i)) * Polynomial::variable(d, x_index(n, i));
    Polynomial yi2 = Polynomial::variable(d, y_index(n, i)) * Polynomial::variable(d, y_index(n, i));
    F.W = F.W + a.a[static_cast<size_t>(i)] * (xi2 + yi2);
  }
  F.dW.resize(static_cast<size_t>(d));
  for (int r = 0; r < d; ++r) F.dW[static_cast<size_t>(r)] = F.W.derivative(r);

  auto etaf = heisenberg::eta_right(n);
  F.eta = *etaf.poly;
  F.deta.assign(static_cast<size_t>(d), std::vector<Polynomial>(static_cast<size_t>(d), Polynomial(d)));
  for (int r = 0; r < d; ++r)
    for (int j = 0; j < d; ++j)
      F.deta[static_cast<size_t>(r)][static_cast<size_t>(j)] = F.eta[static_cast<size_t>(j)].derivative(r);

  auto SR = heisenberg::standard_structure(Model::Right, n);
  F.phi = *SR.phi.poly;

  // xi_a = xi + sum a_i X_ii
  auto B = cr_algebra::basis(n);
  PolyVectorField xia = B[0].field; // xi
  for (auto& e : B)
    if (e.tag == cr_algebra::CRBasisElement::Tag::X && e.i == e.j)
      xia = xia + (a.a[static_cast<size_t>(e.i)] * e.field);
  PolyVectorField phixia = SR.phi.apply_poly(xia);
  F.phi_xi_a = phixia.comp;
  return F;
}

PolyVectorField xi_a_field(const ConeParams& a, int n) {
  auto B = cr_algebra::basis(n);
  PolyVectorField xia = B[0].field;
  for (auto& e : B)
    if (e.tag == cr_algebra::CRBasisElement::Tag::X && e.i == e.j)
      xia = xia + (a.a[static_cast<size_t>(e.i)] * e.field);
  return xia;
}

/// All deformed tensors at a point, through second-order jets.
struct DeformedEval {
  std::vector<Jet2> eta_a;              // d
  std::vector<std::vector<Jet2>> phi_a; // d x d
  std::vector<std::vector<Jet2>> deta_a; // d x d, antisymmetric
};

DeformedEval eval_deformed(const DeformedFields& F, const Point& p) {
  int d = F.d;
  DeformedEval E;
  Jet2 Wj = F.W.eval_jet(p.c);

  std::vector<Jet2> etaj(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) etaj[static_cast<size_t>(j)] = F.eta[static_cast<size_t>(j)].eval_jet(p.c);
  std::vector<Jet2> dWj(static_cast<size_t>(d));
  for (int r = 0; r < d; ++r) dWj[static_cast<size_t>(r)] = F.dW[static_cast<size_t>(r)].eval_jet(p.c);

  E.eta_a.resize(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) E.eta_a[static_cast<size_t>(j)] = etaj[static_cast<size_t>(j)] / Wj;

  // d_r (eta_j / W) = (d_r eta_j)/W - eta_j dW_r / W^2, as jet-valued
  // functions so the metric keeps two full derivative orders.
  Jet2 W2 = Wj * Wj;
  std::vector<std::vector<Jet2>> grad_eta_a(static_cast<size_t>(d),
                                            std::vector<Jet2>(static_cast<size_t>(d)));
  for (int r = 0; r < d; ++r)
    for (int j = 0; j < d; ++j) {
      Jet2 t1 = F.deta[static_cast<size_t>(r)][static_cast<size_t>(j)].eval_jet(p.c) / Wj;
      Jet2 t2 = (etaj[static_cast<size_t>(j)] * dWj[static_cast<size_t>(r)]) / W2;
      grad_eta_a[static_cast<size_t>(r)][static_cast<size_t>(j)] = t1 - t2;
    }
  E.deta_a.assign(static_cast<size_t>(d), std::vector<Jet2>(static_cast<size_t>(d)));
  for (int r = 0; r < d; ++r)
    for (int j = 0; j < d; ++j)
      E.deta_a[static_cast<size_t>(r)][static_cast<size_t>(j)] =
          grad_eta_a[static_cast<size_t>(r)][static_cast<size_t>(j)] -
          grad_eta_a[static_cast<size_t>(j)][static_cast<size_t>(r)];

  E.phi_a.assign(static_cast<size_t>(d), std::vector<Jet2>(static_cast<size_t>(d)));
  for (int r = 0; r < d; ++r) {
    Jet2 q = F.phi_xi_a[static_cast<size_t>(r)].eval_jet(p.c);
    for (int c = 0; c < d; ++c)
      E.phi_a[static_cast<size_t>(r)][static_cast<size_t>(c)] =
          F.phi[static_cast<size_t>(r)][static_cast<size_t>(c)].eval_jet(p.c) -
          q * E.eta_a[static_cast<size_t>(c)];
  }
  return E;
}

JetMat metric_from_eval(const DeformedEval& E, int d, double kappa) {
  JetMat g(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Jet2 acc(d);
      for (int r = 0; r < d; ++r)
        acc += E.phi_a[static_cast<size_t>(r)][static_cast<size_t>(i)] *
               E.deta_a[static_cast<size_t>(r)][static_cast<size_t>(j)];
      acc *= kappa;
      acc += E.eta_a[static_cast<size_t>(i)] * E.eta_a[static_cast<size_t>(j)];
      g.at(i, j) = acc;
      g.at(j, i) = acc;
    }
  return g;
}

} // namespace

SasakiStructure deform(const ConeParams& a, int n) {
  if (static_cast<int>(a.a.size()) != n) throw std::invalid_argument("deform: weight count != n");
  for (auto& w : a.a)
    if (w < Rational(0)) throw std::invalid_argument("deform: negative weight");

  auto F = std::make_shared<DeformedFields>(build_fields(a, n));
  int d = F->d;

  SasakiStructure S;
  S.n = n;
  S.model = Model::Deformed;
  S.weights = a.to_doubles();
  S.xi = xi_a_field(a, n);

  S.eta.dim = d;
  S.eta.eval_jets = [F](const Point& p) { return eval_deformed(*F, p).eta_a; };

  S.phi.dim = d;
  S.phi.eval_jets = [F, d](const Point& p) {
    auto E = eval_deformed(*F, p);
    JetMat m(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m.at(i, j) = E.phi_a[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
  };

  S.g.dim = d;
  S.g.eval_jets = [F, d](const Point& p) { return metric_from_eval(eval_deformed(*F, p), d, 1.0); };
  S.g_sasaki.dim = d;
  S.g_sasaki.eval_jets = [F, d](const Point& p) {
    return metric_from_eval(eval_deformed(*F, p), d, 0.5);
  };
  return S;
}

VecD moment_map(const ConeParams& a, const Point& p) {
  int n = static_cast<int>(a.a.size());
  double W = 1.0;
  for (int i = 0; i < n; ++i)
    W += a.a[static_cast<size_t>(i)].to_double() * (p.x(i) * p.x(i) + p.y(i) * p.y(i));
  VecD h(n);
  for (int i = 0; i < n; ++i) h[i] = (p.x(i) * p.x(i) + p.y(i) * p.y(i)) / W;
  return h;
}

Point reeb_flow_closed(const ConeParams& a, const Point& p0, double t) {
  int n = p0.n;
  Point p(n);
  double zc = 0;
  for (int i = 0; i < n; ++i) {
    double ai = a.a[static_cast<size_t>(i)].to_double();
    double th = 2.0 * ai * t;
    double c = std::cos(th), s = std::sin(th);
    double x0 = p0.x(i), y0 = p0.y(i);
    p.x(i) = c * x0 - s * y0;
    p.y(i) = s * x0 + c * y0;
    zc += (x0 * x0 - y0 * y0) * std::sin(4.0 * ai * t) / 4.0 +
          x0 * y0 * (std::cos(4.0 * ai * t) - 1.0) / 2.0;
  }
  p.z() = p0.z() + t + zc;
  return p;
}

namespace {

Calibration affine_fit(const std::vector<VecD>& hs, const std::vector<double>& ss, int n) {
  int cols = n + 1;
  int rows = static_cast<int>(hs.size());
  if (rows < cols + 1) throw std::invalid_argument("calibrate: degenerate sample design");
  // Normal equations in long double.
  std::vector<long double> ata(static_cast<size_t>(cols * cols), 0.0L);
  std::vector<long double> atb(static_cast<size_t>(cols), 0.0L);
  for (int r = 0; r < rows; ++r) {
    std::array<long double, kMaxDim + 1> row{};
    row[0] = 1.0L;
    for (int i = 0; i < n; ++i) row[static_cast<size_t>(i + 1)] = hs[static_cast<size_t>(r)][i];
    for (int i = 0; i < cols; ++i) {
      for (int j = 0; j < cols; ++j)
        ata[static_cast<size_t>(i * cols + j)] += row[static_cast<size_t>(i)] * row[static_cast<size_t>(j)];
      atb[static_cast<size_t>(i)] += row[static_cast<size_t>(i)] * ss[static_cast<size_t>(r)];
    }
  }
  // Gauss elimination with partial pivoting.
  std::vector<long double> m = ata;
  std::vector<long double> rhs = atb;
  for (int col = 0; col < cols; ++col) {
    int piv = col;
    for (int r = col + 1; r < cols; ++r)
      if (std::fabs(static_cast<double>(m[static_cast<size_t>(r * cols + col)])) >
          std::fabs(static_cast<double>(m[static_cast<size_t>(piv * cols + col)])))
        piv = r;
    if (std::fabs(static_cast<double>(m[static_cast<size_t>(piv * cols + col)])) < 1e-14)
      throw std::invalid_argument("calibrate: degenerate sample design");
    if (piv != col) {
      for (int j = 0; j < cols; ++j)
        std::swap(m[static_cast<size_t>(piv * cols + j)], m[static_cast<size_t>(col * cols + j)]);
      std::swap(rhs[static_cast<size_t>(piv)], rhs[static_cast<size_t>(col)]);
    }
    for (int r = 0; r < cols; ++r) {
      if (r == col) continue;
      long double f = m[static_cast<size_t>(r * cols + col)] / m[static_cast<size_t>(col * cols + col)];
      if (f == 0.0L) continue;
      for (int j = 0; j < cols; ++j)
        m[static_cast<size_t>(r * cols + j)] -= f * m[static_cast<size_t>(col * cols + j)];
      rhs[static_cast<size_t>(r)] -= f * rhs[static_cast<size_t>(col)];
    }
  }
  Calibration cal;
  cal.c0 = static_cast<double>(rhs[0] / m[0]);
  cal.c.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    cal.c[static_cast<size_t>(i)] =
        static_cast<double>(rhs[static_cast<size_t>(i + 1)] /
                            m[static_cast<size_t>((i + 1) * cols + (i + 1))]);
  double worst = 0;
  for (int r = 0; r < rows; ++r) {
    double pred = cal.c0;
    for (int i = 0; i < n; ++i) pred += cal.c[static_cast<size_t>(i)] * hs[static_cast<size_t>(r)][i];
    worst = std::max(worst, std::fabs(pred - ss[static_cast<size_t>(r)]));
  }
  cal.residual = worst;
  return cal;
}

} // namespace

Calibration calibrate_metric(const MetricField& g, const ConeParams& a, int n,
                             const std::vector<Point>& pts) {
  int count = static_cast<int>(pts.size());
  std::vector<VecD> hs(static_cast<size_t>(count));
  std::vector<double> ss(static_cast<size_t>(count));
  map_indexed(count, [&](int i) {
    hs[static_cast<size_t>(i)] = moment_map(a, pts[static_cast<size_t>(i)]);
    ss[static_cast<size_t>(i)] = curvature(g, pts[static_cast<size_t>(i)]).scalar;
  });
  return affine_fit(hs, ss, n);
}

Calibration calibrate_constants(const ConeParams& a, int n, int samples, uint64_t seed) {
  auto S = deform(a, n);
  auto pts = sample_ball(n, samples, seed);
  return calibrate_metric(S.g_sasaki, a, n, pts);
}

double scalar_closed_form(const Calibration& cal, const ConeParams& a, const Point& p) {
  if (a.is_zero()) return -2.0 * static_cast<double>(a.a.size());
  VecD h = moment_map(a, p);
  double s = cal.c0;
  for (int i = 0; i < static_cast<int>(a.a.size()); ++i) s += cal.c[static_cast<size_t>(i)] * h[i];
  return s;
}

Calibration literature_constants(const ConeParams& a, int n) {
  Calibration lit;
  double mod = 0;
  for (auto& w : a.a) mod += w.to_double();
  lit.c0 = 2.0 * n * (4.0 * mod - 1.0);
  lit.c.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double ai = a.a[static_cast<size_t>(i)].to_double();
    lit.c[static_cast<size_t>(i)] = -static_cast<double>(n) * (2.0 * n + 7.0) * ai * ai;
  }
  lit.residual = 0.0;
  return lit;
}

ExtremalityReport extremality_report(const ConeParams& a, int n, int samples, uint64_t seed) {
  auto S = deform(a, n);
  auto pts = sample_ball(n, samples, seed);
  int count = static_cast<int>(pts.size());
  std::vector<VecD> hs(static_cast<size_t>(count));
  std::vector<double> ss(static_cast<size_t>(count));
  map_indexed(count, [&](int i) {
    hs[static_cast<size_t>(i)] = moment_map(a, pts[static_cast<size_t>(i)]);
    ss[static_cast<size_t>(i)] = curvature(S.g_sasaki, pts[static_cast<size_t>(i)]).scalar;
  });
  ExtremalityReport rep;
  rep.affine_residual = affine_fit(hs, ss, n).residual;
  double mean = 0;
  for (double s : ss) mean += s;
  mean /= count;
  double var = 0;
  for (double s : ss) var += (s - mean) * (s - mean);
  rep.scalar_variance = var / count;
  return rep;
}

double phi_sectional(const SasakiStructure& S, const Point& p, int i) {
  VecD u = heisenberg::frame_V_right(S.n, i).eval(p);
  VecD v = S.phi.value(p).mul(u);
  return sectional(S.g_sasaki, p, u, v);
}

} // namespace heiscr::sasaki_cone
