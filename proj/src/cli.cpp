#include "heiscr/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "heiscr/cr_algebra.hpp"
#include "heiscr/ode.hpp"
#include "heiscr/quotients.hpp"
#include "heiscr/report.hpp"
#include "heiscr/sampling.hpp"
#include "heiscr/sasaki_cone.hpp"
#include "heiscr/subriemannian.hpp"
#include "heiscr/suites.hpp"
#include "heiscr/tensor.hpp"

namespace heiscr::cli {

namespace heis = heiscr::heisenberg;
namespace cone = heiscr::sasaki_cone;
namespace subr = heiscr::subriemannian;
namespace quot = heiscr::quotients;

namespace {

nlohmann::ordered_json config_echo(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["n"] = cfg.n;
  j["model"] = cfg.model;
  j["a"] = cfg.a;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["tol"] = cfg.tol;
  j["box"] = cfg.box;
  j["box_z"] = cfg.box_z;
  j["resolution"] = cfg.resolution;
  j["stencil"] = cfg.stencil;
  if (cfg.lattice_k) j["lattice_k"] = *cfg.lattice_k;
  if (!cfg.lattice_l.empty()) j["lattice_l"] = cfg.lattice_l;
  j["L_schedule"] = cfg.L_schedule;
  j["format"] = cfg.format;
  return j;
}

int emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    f << text;
    return 0;
  }
  out << text;
  return 0;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

cone::ConeParams cone_params_of(const RunConfig& cfg) {
  std::vector<double> w = cfg.a;
  if (w.empty()) w.assign(static_cast<size_t>(cfg.n), 0.0);
  return cone::ConeParams::from_doubles(w);
}

quot::LatticeSpec lattice_of(const RunConfig& cfg) {
  if (!cfg.lattice_l.empty()) return quot::LatticeSpec::chain(cfg.lattice_l);
  return quot::LatticeSpec::uniform_k(cfg.n, cfg.lattice_k.value_or(1));
}

} // namespace

std::string verify_json(const RunConfig& cfg) {
  auto reports = all_suites(cfg);
  auto doc = reports_document(reports, cfg.seed, config_echo(cfg));
  return doc.dump(2) + "\n";
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    auto reports = all_suites(cfg);
    auto doc = reports_document(reports, cfg.seed, config_echo(cfg));
    int rc = emit(cfg, doc.dump(2) + "\n", out, err);
    if (rc != 0) return rc;
    return doc["summary"]["failed"].get<int>() == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_curvature(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    auto ap = cone_params_of(cfg);
    auto S = cone::deform(ap, cfg.n);
    auto pts = sample_ball(cfg.n, cfg.samples, cfg.seed);
    auto cal = cone::calibrate_constants(ap, cfg.n, cfg.samples, cfg.seed + 1);
    auto lit = cone::literature_constants(ap, cfg.n);

    if (cfg.format == "csv") {
      std::ostringstream csv;
      csv << "index,s_engine,s_closed_form,residual";
      for (int i = 0; i < cfg.n; ++i) csv << ",h" << (i + 1);
      csv << "\n";
      for (size_t i = 0; i < pts.size(); ++i) {
        double se = curvature(S.g_sasaki, pts[i]).scalar;
        double sc = cone::scalar_closed_form(cal, ap, pts[i]);
        csv << i << "," << csv_num(se) << "," << csv_num(sc) << "," << csv_num(std::fabs(se - sc));
        VecD h = cone::moment_map(ap, pts[i]);
        for (int k = 0; k < cfg.n; ++k) csv << "," << csv_num(h[k]);
        csv << "\n";
      }
      return emit(cfg, csv.str(), out, err);
    }

    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["seed"] = cfg.seed;
    doc["config"] = config_echo(cfg);
    doc["convention_ledger"] = convention_notes();
    doc["calibrated"] = {{"c0", cal.c0}, {"c", cal.c}, {"fit_residual", cal.residual}};
    doc["literature"] = {{"c0", lit.c0}, {"c", lit.c}};
    doc["literature_matches_calibration"] =
        std::fabs(cal.c0 - lit.c0) < 1e-6 &&
        [&] {
          for (size_t i = 0; i < cal.c.size(); ++i)
            if (std::fabs(cal.c[i] - lit.c[i]) > 1e-6) return false;
          return true;
        }();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    double worst = 0;
    for (auto& p : pts) {
      double se = curvature(S.g_sasaki, p).scalar;
      double sc = cone::scalar_closed_form(cal, ap, p);
      VecD h = cone::moment_map(ap, p);
      nlohmann::ordered_json row;
      row["point"] = std::vector<double>(p.c.a.begin(), p.c.a.begin() + p.dim());
      std::vector<double> hv(h.a.begin(), h.a.begin() + cfg.n);
      row["h"] = hv;
      row["s_engine"] = se;
      row["s_closed_form"] = sc;
      row["residual"] = std::fabs(se - sc);
      worst = std::max(worst, std::fabs(se - sc));
      rows.push_back(row);
    }
    doc["rows"] = rows;
    doc["max_residual"] = worst;
    int rc = emit(cfg, doc.dump(2) + "\n", out, err);
    if (rc != 0) return rc;
    return worst <= 1e-6 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_ccdist(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (cfg.n != 1) throw std::invalid_argument("ccdist: lattice tables are sized for n = 1");
    Point o(1), ex = Point::xyz(1, 0, 0), ez = Point::xyz(0, 0, 1);

    subr::GraphOptions gopt;
    gopt.resolution = cfg.resolution;
    gopt.box = cfg.box;
    gopt.box_z = cfg.box_z;
    gopt.stencil = cfg.stencil;

    auto gx = subr::dist_graph(o, ex, gopt, subr::Mode::CC);
    auto gz = subr::dist_graph(o, ez, gopt, subr::Mode::CC);
    auto sx = subr::dist_shooting(o, ex, subr::Mode::CC);
    auto sz = subr::dist_shooting(o, ez, subr::Mode::CC);
    auto tab = subr::convergence_table(o, ez, cfg.L_schedule);

    subr::GraphOptions hopt = gopt;
    hopt.resolution = std::min(cfg.resolution, 32);
    double ratio2 = subr::homogeneity_check(2.0, o, ex, hopt);
    double ratio3 = subr::homogeneity_check(3.0, o, ex, hopt);

    auto pts = sample_ball(1, 10, cfg.seed);
    int rank = 3;
    for (auto& p : pts) rank = std::min(rank, subr::bracket_rank(p));

    if (cfg.format == "csv") {
      std::ostringstream csv;
      csv << "L,d_L,gap\n";
      for (auto& r : tab.rows)
        csv << csv_num(r.L) << "," << csv_num(r.d_L) << "," << csv_num(r.gap) << "\n";
      int rc = emit(cfg, csv.str(), out, err);
      if (rc != 0) return rc;
      return (tab.monotone && tab.gap_shrinks && tab.bounded_by_cc) ? 0 : 1;
    }

    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["seed"] = cfg.seed;
    doc["config"] = config_echo(cfg);
    doc["convention_ledger"] = convention_notes();
    doc["graph"] = {{"d_horizontal", gx.value},
                    {"d_vertical", gz.value},
                    {"rel_error", gz.rel_error},
                    {"isoperimetric_reference", 2.0 * std::sqrt(M_PI)}};
    doc["shooting"] = {{"d_horizontal", sx.value},
                       {"d_vertical", sz.value},
                       {"converged", sx.converged && sz.converged}};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (auto& r : tab.rows)
      rows.push_back({{"L", r.L}, {"d_L", r.d_L}, {"gap", r.gap}, {"solver_ok", r.solver_ok}});
    doc["convergence"] = {{"d_cc", tab.d_cc},
                          {"rows", rows},
                          {"monotone", tab.monotone},
                          {"bounded_by_cc", tab.bounded_by_cc},
                          {"gap_shrinks", tab.gap_shrinks}};
    doc["homogeneity"] = {{"lambda2_ratio", ratio2}, {"lambda3_ratio", ratio3}};
    doc["bracket_rank"] = rank;
    int rc = emit(cfg, doc.dump(2) + "\n", out, err);
    if (rc != 0) return rc;
    bool ok = tab.monotone && tab.gap_shrinks && tab.bounded_by_cc && rank == 3 &&
              std::fabs(ratio2 - 2.0) < 0.1 && std::fabs(ratio3 - 3.0) < 0.15;
    return ok ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_quotient(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    auto spec = lattice_of(cfg);
    if (spec.n != cfg.n)
      throw std::invalid_argument("quotient: lattice spec dimension differs from n");
    auto ap = cone_params_of(cfg);
    double residual = quot::invariance_residual(ap, spec, std::min(cfg.samples, 25), cfg.seed);
    auto h = quot::homology(spec);
    auto pl = quot::projected_lattice(spec);

    bool zero = ap.is_zero();
    bool pass = zero ? residual < 1e-10 : residual > 1e-3;

    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["seed"] = cfg.seed;
    doc["config"] = config_echo(cfg);
    doc["convention_ledger"] = convention_notes();
    doc["invariance_residual"] = residual;
    doc["descends"] = residual < 1e-10;
    doc["expected_descends"] = zero;
    doc["homology"] = {{"free_rank", h.free_rank}, {"torsion", h.torsion}};
    doc["projected_lattice"] = {{"basis", pl.basis}, {"covolume", pl.covolume}};
    int rc = emit(cfg, doc.dump(2) + "\n", out, err);
    if (rc != 0) return rc;
    return pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_flow(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    auto ap = cone_params_of(cfg);
    auto S = cone::deform(ap, cfg.n);
    Point p0 = sample_ball(cfg.n, 1, cfg.seed, 2.0, false)[0];

    std::ostringstream csv;
    csv << "t,deviation\n";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    double worst = 0;
    for (int k = 0; k <= 50; ++k) {
      double t = 10.0 * k / 50.0;
      Point closed = cone::reeb_flow_closed(ap, p0, t);
      Point numeric = flow(S.xi, p0, t);
      double dev = 0;
      for (int i = 0; i < p0.dim(); ++i) dev = std::max(dev, std::fabs(closed.c[i] - numeric.c[i]));
      worst = std::max(worst, dev);
      csv << csv_num(t) << "," << csv_num(dev) << "\n";
      rows.push_back({{"t", t}, {"deviation", dev}});
    }
    if (cfg.format == "csv") {
      int rc = emit(cfg, csv.str(), out, err);
      if (rc != 0) return rc;
      return worst < 1e-6 ? 0 : 1;
    }
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["seed"] = cfg.seed;
    doc["config"] = config_echo(cfg);
    doc["convention_ledger"] = convention_notes();
    doc["start"] = std::vector<double>(p0.c.a.begin(), p0.c.a.begin() + p0.dim());
    doc["rows"] = rows;
    doc["max_deviation"] = worst;
    doc["pass"] = worst < 1e-6;
    int rc = emit(cfg, doc.dump(2) + "\n", out, err);
    if (rc != 0) return rc;
    return worst < 1e-6 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cone(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    // The cone command probes arbitrary elements a0 xi + sum b_i X_ii, so
    // negative coefficients are legitimate input here; skip the weight check.
    RunConfig general = cfg;
    general.a.clear();
    general.validate();
    if (!cfg.a.empty() && static_cast<int>(cfg.a.size()) != cfg.n)
      throw std::invalid_argument("cone: need n coefficients");
    std::vector<double> b = cfg.a;
    if (b.empty()) b.assign(static_cast<size_t>(cfg.n), 0.0);
    cone::ConeElement e{cfg.a0, b};
    auto pos = cone::positivity(e, cfg.n);

    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["seed"] = cfg.seed;
    doc["config"] = config_echo(cfg);
    doc["convention_ledger"] = convention_notes();
    doc["element"] = {{"a0", e.a0}, {"b", e.b}};
    doc["positive"] = pos.positive;
    if (!pos.positive) {
      doc["witness_block"] = pos.witness_block;
      doc["witness_radius"] = pos.witness_radius;
    } else {
      auto red = cone::reduce(e);
      doc["reduced_weights"] = red.to_doubles();
    }
    int rc = emit(cfg, doc.dump(2) + "\n", out, err);
    if (rc != 0) return rc;
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace heiscr::cli
