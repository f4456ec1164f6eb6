#include "heiscr/suites.hpp"

#include <cmath>
#include <sstream>

#include "heiscr/cr_algebra.hpp"
#include "heiscr/heisenberg.hpp"
#include "heiscr/ode.hpp"
#include "heiscr/parallel.hpp"
#include "heiscr/quotients.hpp"
#include "heiscr/sampling.hpp"
#include "heiscr/sasaki_cone.hpp"
#include "heiscr/subriemannian.hpp"
#include "heiscr/tensor.hpp"

namespace heiscr::cli {

namespace heis = heiscr::heisenberg;
namespace cr = heiscr::cr_algebra;
namespace cone = heiscr::sasaki_cone;
namespace subr = heiscr::subriemannian;
namespace quot = heiscr::quotients;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// "observed must exceed threshold" checks, e.g. negative controls.
void add_exceeds(Report& rep, const std::string& id, const std::string& inputs, double observed,
                 double threshold, const std::string& prov) {
  double residual = std::max(0.0, threshold - observed);
  auto& r = rep.add(id, inputs, "> " + fmt(threshold), observed, residual, 0.0, prov);
  r.pass = observed > threshold;
}

int sample_count(const RunConfig& cfg, int cap) { return std::min(cfg.samples, cap); }

} // namespace

Report suite_tensor(const RunConfig& cfg) {
  Report rep;
  rep.suite = "tensor";
  double tol = cfg.tol;

  for (int n = 1; n <= std::min(cfg.n + 1, 3); ++n) {
    auto S = heis::standard_structure(heis::Model::Right, n);
    auto pts = sample_ball(n, sample_count(cfg, 12), cfg.seed + static_cast<uint64_t>(n));
    double worst_scalar = 0, worst_bianchi = 0, worst_literal = 0;
    std::vector<double> ws(pts.size()), wb(pts.size()), wl(pts.size());
    map_indexed(static_cast<int>(pts.size()), [&](int i) {
      auto r = curvature(S.g_sasaki, pts[static_cast<size_t>(i)]);
      ws[static_cast<size_t>(i)] = std::fabs(r.scalar + 2.0 * n);
      wb[static_cast<size_t>(i)] = r.bianchi_residual;
      wl[static_cast<size_t>(i)] =
          std::fabs(curvature(S.g, pts[static_cast<size_t>(i)]).scalar + 0.5 * n);
    });
    for (size_t i = 0; i < pts.size(); ++i) {
      worst_scalar = std::max(worst_scalar, ws[i]);
      worst_bianchi = std::max(worst_bianchi, wb[i]);
      worst_literal = std::max(worst_literal, wl[i]);
    }
    rep.add("tensor.scalar_sasaki_n" + std::to_string(n), "g_sasaki of the right model",
            fmt(-2.0 * n), -2.0 * n + worst_scalar, worst_scalar, tol, "published");
    rep.add("tensor.scalar_recipe_n" + std::to_string(n), "unweighted recipe metric",
            fmt(-0.5 * n), -0.5 * n + worst_literal, worst_literal, tol, "derived");
    rep.add("tensor.bianchi_n" + std::to_string(n), "first Bianchi identity, relative", "0",
            worst_bianchi, worst_bianchi, tol, "trivial");
  }

  {
    MetricField g;
    int d = 3;
    g.dim = d;
    std::vector<std::vector<Polynomial>> id(
        static_cast<size_t>(d), std::vector<Polynomial>(static_cast<size_t>(d), Polynomial(d)));
    for (int i = 0; i < d; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = Polynomial::constant(d, 1);
    g = MetricField::from_polys(id);
    auto r = curvature(g, Point::xyz(0.3, -0.7, 0.2));
    rep.add("tensor.flat_scalar", "Euclidean metric", "0", r.scalar, std::fabs(r.scalar), tol,
            "trivial");
  }

  {
    auto S = heis::standard_structure(heis::Model::Right, 1);
    Point p = sample_ball(1, 1, cfg.seed + 5, 2.0, false)[0];
    VecD v = heis::frame_V_right(1, 0).eval(p);
    VecD u = S.phi.value(p).mul(v);
    double kphi = sectional(S.g_sasaki, p, v, u);
    rep.add("tensor.phi_sectional", "K(V, Phi V), Sasaki normalization", "-3", kphi,
            std::fabs(kphi + 3.0), tol, "published");
    VecD xi = S.xi.eval(p);
    double kxi = sectional(S.g_sasaki, p, xi, v);
    rep.add("tensor.reeb_sectional", "K(xi, V), Sasaki normalization", "1", kxi,
            std::fabs(kxi - 1.0), tol, "derived");
    double kill = killing_residual(S.g, S.xi, p);
    rep.add("tensor.reeb_killing", "Lie derivative of g along xi", "0", kill, kill, tol,
            "published");
    PolyVectorField D(1);
    D.comp[0] = Polynomial::variable(3, 0);
    D.comp[1] = Polynomial::variable(3, 1);
    D.comp[2] = Polynomial::variable(3, 2, Rational(2));
    add_exceeds(rep, "tensor.dilation_not_killing", "L_D g at (1,0,0)",
                killing_residual(S.g, D, Point::xyz(1, 0, 0)), 0.1, "derived");
    VecD ld = lie_derivative_form(D, S.eta, p);
    VecD ev = S.eta.value(p);
    double worst = 0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::fabs(ld[i] - 2.0 * ev[i]));
    rep.add("tensor.lie_D_eta", "L_D eta = 2 eta", "0", worst, worst, tol, "derived");
    MatD de = exterior_derivative(S.eta, p);
    rep.add("tensor.d_eta_xy", "d(eta)(d/dx, d/dy)", "1", de(0, 1), std::fabs(de(0, 1) - 1.0), tol,
            "derived");
    double vol = contact_volume(S.eta, 1, p);
    rep.add("tensor.contact_volume", "|eta ^ d eta| coefficient", "1", vol,
            std::fabs(std::fabs(vol) - 1.0), tol, "derived");
  }
  return rep;
}

Report suite_heisenberg(const RunConfig& cfg) {
  Report rep;
  rep.suite = "heisenberg";
  double tol = cfg.tol;
  int n = cfg.n;
  Rng rng(cfg.seed + 11);

  auto dyadic_point = [&](int blocks) {
    Point p(blocks);
    for (int i = 0; i < p.dim(); ++i) p.c.a[static_cast<size_t>(i)] = rng.uniform_int(-16, 16) / 4.0;
    return p;
  };

  {
    auto p = Point::xyz(1, 2, 3), q = Point::xyz(4, 5, 6);
    auto r = heis::mul(p, q);
    double res = std::fabs(r.x(0) - 5) + std::fabs(r.y(0) - 7) + std::fabs(r.z() - 14);
    rep.add("heis.group_law", "(1,2,3)*(4,5,6)", "(5,7,14)", r.z(), res, 0.0, "derived");
  }
  {
    double worst = 0;
    for (int t = 0; t < 10; ++t) {
      auto p = dyadic_point(n), q = dyadic_point(n), r = dyadic_point(n);
      Point lhs = heis::mul(heis::mul(p, q), r);
      Point rhs = heis::mul(p, heis::mul(q, r));
      for (int i = 0; i < p.dim(); ++i) worst = std::max(worst, std::fabs(lhs.c[i] - rhs.c[i]));
      Point e = heis::mul(p, heis::inv(p));
      worst = std::max(worst, e.c.max_abs());
    }
    rep.add("heis.group_axioms", "associativity and inverses on dyadic points", "0", worst, worst,
            0.0, "trivial");
  }
  {
    double worst = 0;
    for (int t = 0; t < 6; ++t) {
      auto p = dyadic_point(n), q = dyadic_point(n);
      Point lhs = heis::dilation(3.0, heis::mul(p, q));
      Point rhs = heis::mul(heis::dilation(3.0, p), heis::dilation(3.0, q));
      for (int i = 0; i < p.dim(); ++i) worst = std::max(worst, std::fabs(lhs.c[i] - rhs.c[i]));
    }
    rep.add("heis.dilation_automorphism", "dil_3(pq) = dil_3(p) dil_3(q)", "0", worst, worst, 0.0,
            "derived");
  }

  for (auto model : {heis::Model::Right, heis::Model::Left, heis::Model::Intermediate}) {
    auto S = heis::standard_structure(model, n);
    auto pts = sample_ball(n, sample_count(cfg, 15), cfg.seed + 21);
    std::vector<double> w(pts.size());
    map_indexed(static_cast<int>(pts.size()), [&](int i) {
      w[static_cast<size_t>(i)] = heis::structure_residuals(S, pts[static_cast<size_t>(i)]).max();
    });
    double worst = 0;
    for (double v : w) worst = std::max(worst, v);
    rep.add("heis.structure_" + heis::model_name(model), "contact metric identities", "0", worst,
            worst, tol, "published");
  }

  {
    auto SR = heis::standard_structure(heis::Model::Right, n);
    auto SL = heis::standard_structure(heis::Model::Left, n);
    MatD J(2 * n + 1);
    for (int i = 0; i < n; ++i) {
      J(x_index(n, i), y_index(n, i)) = 1.0;
      J(y_index(n, i), x_index(n, i)) = 1.0;
    }
    J(z_index(n), z_index(n)) = 1.0;
    double worst = 0;
    for (auto& p : sample_ball(n, sample_count(cfg, 10), cfg.seed + 31)) {
      Point ip = heis::involution(p);
      VecD pe = heis::pullback_form(SL.eta, ip, J);
      VecD e = SR.eta.value(p);
      for (int i = 0; i < p.dim(); ++i) worst = std::max(worst, std::fabs(pe[i] - e[i]));
      worst = std::max(worst, (heis::pullback_metric(SL.g, ip, J) - SR.g.eval_jets(p).values()).max_abs());
      worst = std::max(worst, (heis::pullback_endo(SL.phi, ip, J) - SR.phi.value(p)).max_abs());
    }
    rep.add("heis.involution_pullback", "iota^* S_left = S_right", "0", worst, worst, tol,
            "published");
  }
  {
    auto SR = heis::standard_structure(heis::Model::Right, n);
    double worst = 0;
    for (int t = 0; t < 6; ++t) {
      auto h = dyadic_point(n);
      auto p = dyadic_point(n);
      VecD pe = heis::pullback_form(SR.eta, heis::mul(p, h), heis::right_translation_jacobian(h));
      VecD e = SR.eta.value(p);
      for (int i = 0; i < p.dim(); ++i) worst = std::max(worst, std::fabs(pe[i] - e[i]));
    }
    rep.add("heis.eta_right_invariant", "R_h^* eta = eta on dyadic samples", "0", worst, worst,
            tol, "published");
  }
  {
    auto S = heis::standard_structure(heis::Model::Right, n);
    auto pts = sample_ball(n, sample_count(cfg, 10), cfg.seed + 41);
    double worst = 0;
    for (auto& p : pts)
      for (int i = 0; i < n; ++i) {
        worst = std::max(worst, std::fabs(S.eta.apply(p, heis::frame_V_right(n, i).eval(p))));
        worst = std::max(worst, std::fabs(S.eta.apply(p, heis::frame_U_right(n, i).eval(p))));
      }
    rep.add("heis.frames_span_kernel", "eta(V_i) = eta(U_i) = 0", "0", worst, worst, tol,
            "published");

    auto bad = S;
    auto poly = *S.phi.poly;
    for (auto& row : poly)
      for (auto& e : row) e = Rational(-1) * e;
    bad.phi = EndoField::from_polys(poly);
    add_exceeds(rep, "heis.phi_sign_tamedness", "recipe residual with Phi -> -Phi",
                heis::structure_residuals(bad, pts[0]).metric_recipe, 0.5, "derived");
  }
  {
    auto S = heis::standard_structure(heis::Model::Right, std::min(n + 1, 2));
    Point p = sample_ball(std::min(n + 1, 2), 1, cfg.seed + 51, 2.0, false)[0];
    double vol = contact_volume(S.eta, std::min(n + 1, 2), p);
    double want = std::min(n + 1, 2) == 2 ? 2.0 : 1.0;
    rep.add("heis.contact_volume_factorial", "|eta ^ (d eta)^n| = n!", fmt(want), vol,
            std::fabs(std::fabs(vol) - want), tol, "derived");
  }
  return rep;
}

Report suite_cr_algebra(const RunConfig& cfg) {
  Report rep;
  rep.suite = "cr_algebra";
  double tol = cfg.tol;
  int n = cfg.n;

  auto B = cr::basis(n);
  rep.add("cr.dimension", "basis size", fmt(n * n + 2 * n + 2), static_cast<double>(B.size()),
          std::fabs(static_cast<double>(B.size()) - (n * n + 2 * n + 2)), 0.0, "published");

  bool closed = true;
  std::string closure_msg = "closes";
  cr::StructureConstants table;
  try {
    table = cr::bracket_table(n);
  } catch (const std::exception& e) {
    closed = false;
    closure_msg = e.what();
  }
  {
    auto& r = rep.add("cr.bracket_closure", closure_msg, "exact", closed ? 1.0 : 0.0,
                      closed ? 0.0 : 1.0, 0.0, "published");
    r.pass = closed;
  }
  if (closed) {
    rep.add("cr.antisymmetry", "c^k_ab = -c^k_ba exactly", "exact",
            table.antisymmetric() ? 1.0 : 0.0, table.antisymmetric() ? 0.0 : 1.0, 0.0, "trivial");
    rep.add("cr.jacobi", "Jacobi identity on structure constants", "exact",
            table.jacobi() ? 1.0 : 0.0, table.jacobi() ? 0.0 : 1.0, 0.0, "trivial");
    auto chk = cr::verify_ideal(table, B);
    rep.add("cr.heisenberg_ideal", chk.witness.empty() ? "[h, cr] in h" : chk.witness, "exact",
            chk.heis_is_ideal ? 1.0 : 0.0, chk.heis_is_ideal ? 0.0 : 1.0, 0.0, "published");
    rep.add("cr.quotient_un", "quotient brackets match u(n)", "exact",
            chk.quotient_matches_un ? 1.0 : 0.0, chk.quotient_matches_un ? 0.0 : 1.0, 0.0,
            "published");
    rep.add("cr.quotient_center", "D central in the quotient", "exact",
            chk.d_central_in_quotient ? 1.0 : 0.0, chk.d_central_in_quotient ? 0.0 : 1.0, 0.0,
            "published");
  }

  {
    auto S = heis::standard_structure(heis::Model::Right, n);
    auto pts = sample_ball(n, sample_count(cfg, 50), cfg.seed + 61);
    std::vector<double> w(B.size(), 0.0);
    map_indexed(static_cast<int>(B.size()), [&](int bi) {
      double worst = 0;
      for (auto& p : pts) {
        auto [rc, rj] = cr::cr_residual(B[static_cast<size_t>(bi)].field, S, p);
        worst = std::max(worst, std::max(rc, rj));
      }
      w[static_cast<size_t>(bi)] = worst;
    });
    double worst = 0;
    for (double v : w) worst = std::max(worst, v);
    rep.add("cr.basis_residuals", "infinitesimal CR conditions over the basis", "0", worst, worst,
            std::max(tol, 1e-9), "published");

    PolyVectorField badf(n);
    badf.comp[0] = Polynomial::variable(2 * n + 1, 0);
    Point witness(n);
    for (int i = 0; i < witness.dim(); ++i) witness.c.a[static_cast<size_t>(i)] = 1.0;
    auto [rc, rj] = cr::cr_residual(badf, S, witness);
    add_exceeds(rep, "cr.negative_control", "x1 d/dx1 is not in the algebra", std::max(rc, rj),
                1e-3, "derived");
  }

  {
    int d = 2 * n + 1;
    Polynomial F = Polynomial::variable(d, x_index(n, 0)); // gives S_1
    PolyVectorField X = cr::hamiltonian_field(F, n);
    auto eta = heis::eta_right(n);
    Polynomial paired(d);
    for (int k = 0; k < d; ++k)
      paired = paired + (*eta.poly)[static_cast<size_t>(k)] * X.comp[static_cast<size_t>(k)];
    bool exact = paired == F;
    rep.add("cr.hamiltonian_pairing", "eta(X_F) = F exactly", "exact", exact ? 1.0 : 0.0,
            exact ? 0.0 : 1.0, 0.0, "derived");
  }

  {
    // D flow fixes the origin; xi flow is vertical translation
    Point origin(n);
    Point dmoved = flow(B.back().field, origin, 2.0);
    rep.add("cr.dilation_fixes_origin", "flow of D from 0", "0", dmoved.c.max_abs(),
            dmoved.c.max_abs(), std::max(tol, 1e-10), "published");
    if (n >= 2) {
      int idx = -1;
      for (size_t i = 0; i < B.size(); ++i)
        if (B[i].name == "X12") idx = static_cast<int>(i);
      Point q0(n);
      q0.x(0) = 1.0;
      Point qper = flow(B[static_cast<size_t>(idx)].field, q0, 2.0 * M_PI);
      double dev = 0;
      for (int i = 0; i < q0.dim(); ++i) dev = std::max(dev, std::fabs(qper.c[i] - q0.c[i]));
      rep.add("cr.x12_periodic", "X12 flow closes after 2 pi", "0", dev, dev, 1e-7, "derived");
    }
  }
  return rep;
}

Report suite_sasaki_cone(const RunConfig& cfg) {
  Report rep;
  rep.suite = "sasaki_cone";
  double tol = cfg.tol;
  int n = cfg.n;

  {
    auto pos = cone::positivity(cone::ConeElement{1.0, std::vector<double>(static_cast<size_t>(n), 1.0)}, n);
    rep.add("cone.positivity_interior", "a0=1, b=1", "positive", pos.positive ? 1.0 : 0.0,
            pos.positive ? 0.0 : 1.0, 0.0, "derived");
    auto zero = cone::positivity(cone::ConeElement{0.0, std::vector<double>(static_cast<size_t>(n), 0.0)}, n);
    rep.add("cone.positivity_zero", "a0=0, b=0", "not positive", zero.positive ? 1.0 : 0.0,
            zero.positive ? 1.0 : 0.0, 0.0, "trivial");
    std::vector<double> bneg(static_cast<size_t>(n), 0.0);
    bneg[0] = -0.1;
    auto neg = cone::positivity(cone::ConeElement{1.0, bneg}, n);
    bool ok = !neg.positive && neg.witness_radius > 3.0;
    auto& r = rep.add("cone.positivity_witness", "a0=1, b1=-0.1", "witness radius ~ sqrt(10)",
                      neg.witness_radius, ok ? 0.0 : 1.0, 0.0, "derived");
    r.pass = ok;
  }
  {
    std::vector<double> b(static_cast<size_t>(n), 2.0);
    b[0] = 4.0;
    auto red = cone::reduce(cone::ConeElement{2.0, b});
    bool sorted = true;
    for (size_t i = 1; i < red.a.size(); ++i)
      if (red.a[i] < red.a[i - 1]) sorted = false;
    rep.add("cone.reduce_sorted", "reduce scales a0 to 1 and orders weights", "sorted",
            sorted ? 1.0 : 0.0, sorted ? 0.0 : 1.0, 0.0, "published");
  }

  std::vector<double> weights = cfg.a;
  if (weights.empty()) {
    weights.assign(static_cast<size_t>(n), 0.0);
    weights.back() = 1.0;
  }
  auto ap = cone::ConeParams::from_doubles(weights);
  auto S = cone::deform(ap, n);
  auto pts = sample_ball(n, sample_count(cfg, 20), cfg.seed + 71);
  {
    std::vector<double> w(pts.size()), kv(pts.size()), ev(pts.size());
    map_indexed(static_cast<int>(pts.size()), [&](int i) {
      const Point& p = pts[static_cast<size_t>(i)];
      w[static_cast<size_t>(i)] = heis::structure_residuals(S, p).max();
      kv[static_cast<size_t>(i)] = killing_residual(S.g, S.xi, p);
      ev[static_cast<size_t>(i)] = std::fabs(S.eta.apply(p, S.xi.eval(p)) - 1.0);
    });
    double worst = 0, wkill = 0, weta = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      worst = std::max(worst, w[i]);
      wkill = std::max(wkill, kv[i]);
      weta = std::max(weta, ev[i]);
    }
    rep.add("cone.deform_structure", "contact metric identities of S_a", "0", worst, worst,
            std::max(tol, 1e-9), "published");
    rep.add("cone.xi_a_killing", "K-contact: xi_a Killing for g_a", "0", wkill, wkill,
            std::max(tol, 1e-8), "published");
    rep.add("cone.eta_a_reeb", "eta_a(xi_a) = 1", "0", weta, weta, tol, "derived");
  }
  {
    double worst = 0;
    Point p0 = pts[0];
    for (double t : {0.5, 2.0, 5.0, 10.0}) {
      Point cpt = cone::reeb_flow_closed(ap, p0, t);
      Point npt = flow(S.xi, p0, t);
      for (int i = 0; i < p0.dim(); ++i) worst = std::max(worst, std::fabs(cpt.c[i] - npt.c[i]));
    }
    rep.add("cone.reeb_flow", "closed form vs integrator, t in [0,10]", "0", worst, worst, 1e-6,
            "published");
    double hdrift = 0;
    VecD h0 = cone::moment_map(ap, p0);
    for (double t : {1.0, 4.0, 9.0}) {
      VecD ht = cone::moment_map(ap, cone::reeb_flow_closed(ap, p0, t));
      for (int i = 0; i < n; ++i) hdrift = std::max(hdrift, std::fabs(ht[i] - h0[i]));
    }
    rep.add("cone.moment_invariant", "h constant along the Reeb flow", "0", hdrift, hdrift,
            std::max(tol, 1e-9), "derived");
  }
  {
    auto zero = cone::ConeParams::from_doubles(std::vector<double>(static_cast<size_t>(n), 0.0));
    auto cal0 = cone::calibrate_constants(zero, n, sample_count(cfg, 30), cfg.seed + 81);
    rep.add("cone.calibration_anchor", "c0 at a = 0", fmt(-2.0 * n), cal0.c0,
            std::fabs(cal0.c0 + 2.0 * n), std::max(tol, 1e-9), "published");

    auto cal = cone::calibrate_constants(ap, n, sample_count(cfg, 40), cfg.seed + 82);
    rep.add("cone.affine_fit", "scalar curvature affine in moments", "0", cal.residual,
            cal.residual, std::max(tol, 1e-8), "published");

    double want_c0 = -2.0 * n;
    double mod = 0;
    for (double v : weights) mod += v;
    want_c0 += 16.0 * (n + 1) * mod;
    rep.add("cone.calibrated_c0", "measured closed form 16(n+1)|a| - 2n", fmt(want_c0), cal.c0,
            std::fabs(cal.c0 - want_c0), 1e-6, "derived");

    auto lit = cone::literature_constants(ap, n);
    bool flagged = ap.is_zero() ? true : std::fabs(lit.c0 - cal.c0) > 1e-3;
    auto& r = rep.add("cone.literature_flagged",
                      "printed constants differ from calibration and are reported",
                      "mismatch flagged", std::fabs(lit.c0 - cal.c0), flagged ? 0.0 : 1.0, 0.0,
                      "published");
    r.pass = flagged;

    // held-out closed-form agreement
    auto held = sample_ball(n, sample_count(cfg, 15), cfg.seed + 83);
    std::vector<double> dv(held.size());
    map_indexed(static_cast<int>(held.size()), [&](int i) {
      const Point& p = held[static_cast<size_t>(i)];
      dv[static_cast<size_t>(i)] = std::fabs(cone::scalar_closed_form(cal, ap, p) -
                                             curvature(S.g_sasaki, p).scalar);
    });
    double worst = 0;
    for (double v : dv) worst = std::max(worst, v);
    rep.add("cone.closed_form_heldout", "calibrated form vs engine scalar", "0", worst, worst,
            1e-6, "published");
  }
  {
    auto z = cone::extremality_report(
        cone::ConeParams::from_doubles(std::vector<double>(static_cast<size_t>(n), 0.0)), n,
        sample_count(cfg, 25), cfg.seed + 91);
    rep.add("cone.variance_zero_at_origin", "constant scalar only at a = 0", "0",
            z.scalar_variance, z.scalar_variance, 1e-10, "published");
    auto e = cone::extremality_report(ap, n, sample_count(cfg, 25), cfg.seed + 91);
    if (!ap.is_zero())
      add_exceeds(rep, "cone.variance_positive", "scalar varies for a != 0", e.scalar_variance,
                  1e-3, "published");
    rep.add("cone.extremal_everywhere", "affine residual on the cone", "0", e.affine_residual,
            e.affine_residual, std::max(tol, 1e-8), "published");
  }
  {
    auto S0 = cone::deform(cone::ConeParams::from_doubles(std::vector<double>(static_cast<size_t>(n), 0.0)), n);
    Point p = pts[1];
    double k = cone::phi_sectional(S0, p, 0);
    rep.add("cone.phi_sectional_standard", "K(u, Phi u) at a = 0", "-3", k, std::fabs(k + 3.0),
            std::max(tol, 1e-8), "published");
    auto r0 = curvature(S0.g_sasaki, p);
    MatD G = S0.g_sasaki.eval_jets(p).values();
    VecD eta = S0.eta.value(p);
    double worst = 0;
    for (int i = 0; i < 2 * n + 1; ++i)
      for (int j = 0; j < 2 * n + 1; ++j)
        worst = std::max(worst, std::fabs(r0.ricci(i, j) + 2.0 * G(i, j) -
                                          (2.0 * n + 2.0) * eta[i] * eta[j]));
    rep.add("cone.null_eta_einstein", "Ric = -2 g + (2n+2) eta x eta at a = 0", "0", worst, worst,
            std::max(tol, 1e-8), "published");
  }
  return rep;
}

Report suite_subriemannian(const RunConfig& cfg) {
  Report rep;
  rep.suite = "subriemannian";
  double tol = cfg.tol;

  {
    Point o(1);
    std::vector<VecD> straight(8, VecD(2));
    for (auto& u : straight) u[0] = 1.0;
    auto path = subr::lift(straight, o);
    Point e = subr::endpoint(path);
    double res = std::fabs(e.x(0) - 1.0) + std::fabs(e.y(0)) + std::fabs(e.z());
    rep.add("subr.lift_straight", "unit x-controls from 0", "(1,0,0)", e.x(0), res, tol, "derived");
    rep.add("subr.cc_length_straight", "length of the straight lift", "1", subr::cc_length(path),
            std::fabs(subr::cc_length(path) - 1.0), tol, "derived");

    int m = 1500;
    std::vector<VecD> circle;
    for (int k = 0; k < m; ++k) {
      double s = (k + 0.5) / m;
      VecD u(2);
      u[0] = 2 * M_PI * std::cos(2 * M_PI * s);
      u[1] = 2 * M_PI * std::sin(2 * M_PI * s);
      circle.push_back(u);
    }
    Point le = subr::endpoint(subr::lift(circle, o));
    rep.add("subr.lift_loop_area", "closed loop picks up the enclosed area", fmt(-M_PI), le.z(),
            std::fabs(le.z() + M_PI), 1e-4, "derived");
  }
  {
    auto pts = sample_ball(cfg.n, sample_count(cfg, 10), cfg.seed + 101);
    int worst_rank = 2 * cfg.n + 1, worst_flat = 2 * cfg.n;
    for (auto& p : pts) {
      worst_rank = std::min(worst_rank, subr::bracket_rank(p));
      worst_flat = std::min(worst_flat, subr::horizontal_rank(p));
    }
    rep.add("subr.bracket_rank", "rank of frames plus first brackets", fmt(2.0 * cfg.n + 1),
            worst_rank, std::fabs(worst_rank - (2.0 * cfg.n + 1)), 0.0, "published");
    rep.add("subr.horizontal_rank", "frame alone has corank one", fmt(2.0 * cfg.n), worst_flat,
            std::fabs(worst_flat - 2.0 * cfg.n), 0.0, "trivial");
  }
  {
    Point o(1), ex = Point::xyz(1, 0, 0), ez = Point::xyz(0, 0, 1);
    subr::GraphOptions g16;
    g16.resolution = 16;
    g16.stencil = cfg.stencil;
    auto dx = subr::dist_graph(o, ex, g16, subr::Mode::CC);
    rep.add("subr.graph_horizontal", "d_cc(0,(1,0,0)) via lattice oracle", "1", dx.value,
            std::fabs(dx.value - 1.0), 0.05, "derived");
    auto dz = subr::dist_graph(o, ez, g16, subr::Mode::CC);
    double exact = 2.0 * std::sqrt(M_PI);
    rep.add("subr.graph_vertical", "d_cc(0,(0,0,1)), isoperimetric value", fmt(exact), dz.value,
            std::fabs(dz.value - exact), 0.06 * exact, "derived");
    auto& ub = rep.add("subr.graph_upper_bound", "graph paths are genuine horizontal paths",
                       ">= exact", dz.value, std::max(0.0, exact - dz.value), 1e-9, "derived");
    ub.pass = dz.value >= exact - 1e-9;

    auto d1 = subr::dist_graph(o, ez, g16, subr::Mode::Riemannian, 1.0);
    rep.add("subr.graph_penalized_L1", "vertical segment at L = 1", "1", d1.value,
            std::fabs(d1.value - 1.0), 1e-6, "derived");
    auto d10 = subr::dist_graph(o, ez, g16, subr::Mode::Riemannian, 10.0);
    auto& mono = rep.add("subr.graph_penalty_monotone", "d_1 <= d_10 <= d_cc", "monotone",
                         d10.value, 0.0, 0.0, "published");
    mono.pass = d1.value <= d10.value + 1e-9 && d10.value <= dz.value + 1e-9;
    if (!mono.pass) mono.residual = 1.0;
  }
  {
    Point o(1), ex = Point::xyz(1, 0, 0);
    auto s = subr::dist_shooting(o, ex, subr::Mode::CC);
    rep.add("subr.shoot_horizontal", "normal geodesic to (1,0,0)", "1", s.value,
            std::fabs(s.value - 1.0), 1e-4, "derived");
  }
  return rep;
}

Report suite_quotients(const RunConfig& cfg) {
  Report rep;
  rep.suite = "quotients";
  double tol = cfg.tol;
  int n = cfg.n;

  quot::LatticeSpec spec = cfg.lattice_l.empty()
                               ? quot::LatticeSpec::uniform_k(n, cfg.lattice_k.value_or(1))
                               : quot::LatticeSpec::chain(cfg.lattice_l);
  if (spec.n != n) spec = quot::LatticeSpec::uniform_k(n, cfg.lattice_k.value_or(1));

  {
    Rng rng(cfg.seed + 111);
    auto gens = quot::generators(spec);
    bool ok = gens.size() == static_cast<size_t>(2 * n + 1);
    for (int t = 0; t < 15 && ok; ++t) {
      heis::GroupElement w = heis::identity(n);
      for (int s = 0; s < 6; ++s) {
        auto g = gens[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(gens.size()) - 1))];
        if (rng.uniform_int(0, 1)) g = heis::inv(g);
        w = heis::mul(w, g);
      }
      ok = quot::in_lattice(w, spec) && quot::in_lattice(heis::inv(w), spec);
    }
    rep.add("quot.subgroup_closure", "random generator words stay in the lattice", "closed",
            ok ? 1.0 : 0.0, ok ? 0.0 : 1.0, 0.0, "published");
  }
  {
    Rng rng(cfg.seed + 121);
    double worst = 0;
    bool boxed = true;
    for (int t = 0; t < 10; ++t) {
      Point p(n);
      for (int i = 0; i < p.dim(); ++i) p.c.a[static_cast<size_t>(i)] = rng.uniform_int(-64, 64) / 8.0;
      auto r = quot::reduce_point(p, spec);
      Point back = heis::mul(r.representative, r.deck);
      for (int i = 0; i < p.dim(); ++i) worst = std::max(worst, std::fabs(back.c[i] - p.c[i]));
      for (int i = 0; i < n; ++i) {
        if (r.representative.x(i) < 0 || r.representative.x(i) >= spec.sx()) boxed = false;
        if (r.representative.y(i) < 0 || r.representative.y(i) >= spec.sy(i)) boxed = false;
      }
      if (r.representative.z() < 0 || r.representative.z() >= spec.sz()) boxed = false;
    }
    rep.add("quot.reduction_exact", "mul(representative, deck) returns the input", "0", worst,
            worst, tol, "derived");
    rep.add("quot.reduction_boxed", "representative in the canonical box", "in box",
            boxed ? 1.0 : 0.0, boxed ? 0.0 : 1.0, 0.0, "trivial");
  }
  {
    auto zero = cone::ConeParams::from_doubles(std::vector<double>(static_cast<size_t>(n), 0.0));
    double r0 = quot::invariance_residual(zero, spec, sample_count(cfg, 12), cfg.seed + 131);
    rep.add("quot.descends_at_zero", "standard structure is deck invariant", "0", r0, r0,
            std::max(tol, 1e-10), "published");
    for (double aval : {0.25, 1.0}) {
      std::vector<double> w(static_cast<size_t>(n), 0.0);
      w.back() = aval;
      double r = quot::invariance_residual(cone::ConeParams::from_doubles(w), spec,
                                           sample_count(cfg, 12), cfg.seed + 131);
      add_exceeds(rep, "quot.obstructed_a" + fmt(aval), "deformed structure fails deck invariance",
                  r, 1e-3, "published");
    }
    auto SL = heis::standard_structure(heis::Model::Left, n);
    add_exceeds(rep, "quot.left_incompatible", "left structure vs right deck action",
                quot::structure_invariance_residual(SL, spec, sample_count(cfg, 12), cfg.seed + 131),
                1e-3, "published");
  }
  {
    for (long long k : {1LL, 2LL, 3LL}) {
      auto h = quot::homology(quot::LatticeSpec::uniform_k(n, k));
      bool ok = h.free_rank == 2 * n &&
                (k == 1 ? h.torsion.empty()
                        : (h.torsion.size() == 1 && h.torsion[0] == k));
      rep.add("quot.homology_k" + std::to_string(k), "H1 = Z^{2n} + Z_k", "matches",
              ok ? 1.0 : 0.0, ok ? 0.0 : 1.0, 0.0, "published");
    }
    auto pl = quot::projected_lattice(spec);
    double want = 1.0;
    for (int i = 0; i < n; ++i) want *= spec.sx() * spec.sy(i);
    rep.add("quot.projected_covolume", "covolume of the projected lattice", fmt(want), pl.covolume,
            std::fabs(pl.covolume - want), 0.0, "derived");
  }
  return rep;
}

std::vector<Report> all_suites(const RunConfig& cfg) {
  return {suite_tensor(cfg),     suite_heisenberg(cfg),    suite_cr_algebra(cfg),
          suite_sasaki_cone(cfg), suite_subriemannian(cfg), suite_quotients(cfg)};
}

} // namespace heiscr::cli
