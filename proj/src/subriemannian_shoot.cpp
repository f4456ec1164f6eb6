#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heiscr/heisenberg.hpp"
#include "heiscr/ode.hpp"
#include "heiscr/sampling.hpp"
#include "heiscr/subriemannian.hpp"
#include "heiscr/tensor.hpp"

namespace heiscr::subriemannian {

namespace {

// Damped Gauss-Newton on F: R^m -> R^m with forward-difference Jacobian.
// Returns true when |F|_inf dropped below tol.
bool levenberg_solve(const std::function<VecD(const VecD&)>& F, VecD& x, double tol,
                     int max_iter) {
  int m = x.n;
  double lambda = 1e-3;
  VecD fx = F(x);
  double fn = fx.max_abs();
  for (int it = 0; it < max_iter; ++it) {
    if (fn < tol) return true;
    MatD J(m);
    for (int j = 0; j < m; ++j) {
      double eps = 1e-7 * std::max(1.0, std::fabs(x[j]));
      VecD xp = x;
      xp.a[static_cast<size_t>(j)] += eps;
      VecD fp = F(xp);
      for (int i = 0; i < m; ++i) J(i, j) = (fp[i] - fx[i]) / eps;
    }
    MatD JtJ = J.transpose().mul(J);
    VecD Jtf(m);
    for (int i = 0; i < m; ++i) {
      double s = 0;
      for (int r = 0; r < m; ++r) s += J(r, i) * fx[r];
      Jtf[i] = s;
    }
    bool stepped = false;
    for (int attempt = 0; attempt < 8 && !stepped; ++attempt) {
      MatD A = JtJ;
      for (int i = 0; i < m; ++i) A(i, i) += lambda * std::max(1e-12, JtJ(i, i));
      VecD delta;
      try {
        delta = inverse(A).mul(Jtf);
      } catch (const std::exception&) {
        lambda *= 10;
        continue;
      }
      VecD xn = x;
      for (int i = 0; i < m; ++i) xn.a[static_cast<size_t>(i)] -= delta[i];
      VecD fnxt = F(xn);
      if (fnxt.max_abs() < fn) {
        x = xn;
        fx = fnxt;
        fn = fnxt.max_abs();
        lambda = std::max(1e-12, lambda * 0.3);
        stepped = true;
      } else {
        lambda *= 10;
      }
    }
    if (!stepped) return fn < tol;
  }
  return fn < tol;
}

// Cotangent Hamiltonian of both metrics in the right-invariant coframe:
// H = 1/2 [ sum_i ((px_i + y_i pz)^2 + py_i^2) + invL * pz^2 ], where
// invL = 0 gives the normal Pontryagin system of the contact distribution
// and invL = 1/L the Levi-Civita geodesic flow of g_L = g_T + L eta (x) eta.
OdeState ham_rhs(const OdeState& s, int n, double invL) {
  int d = 2 * n + 1;
  OdeState dy(2 * d);
  double pz = s[d + z_index(n)];
  double zdot = invL * pz;
  for (int i = 0; i < n; ++i) {
    double y = s[y_index(n, i)];
    double w = s[d + x_index(n, i)] + y * pz;
    double py = s[d + y_index(n, i)];
    dy[x_index(n, i)] = w;
    dy[y_index(n, i)] = py;
    zdot += y * w;
    dy[d + x_index(n, i)] = 0;
    dy[d + y_index(n, i)] = -w * pz;
  }
  dy[z_index(n)] = zdot;
  dy[d + z_index(n)] = 0;
  return dy;
}

double ham_speed(const VecD& cov, const Point& p, double invL) {
  int n = p.n;
  double twoH = invL * cov[z_index(n)] * cov[z_index(n)];
  for (int i = 0; i < n; ++i) {
    double w = cov[x_index(n, i)] + p.y(i) * cov[z_index(n)];
    double py = cov[y_index(n, i)];
    twoH += w * w + py * py;
  }
  return std::sqrt(twoH);
}

Point ham_endpoint(const Point& p, const VecD& cov, double invL, double ode_tol) {
  int n = p.n;
  int d = 2 * n + 1;
  OdeState s0(2 * d);
  for (int i = 0; i < d; ++i) {
    s0[i] = p.c[i];
    s0[d + i] = cov[i];
  }
  OdeOptions opt;
  opt.abs_tol = ode_tol;
  opt.rel_tol = ode_tol;
  opt.initial_step = 1e-2;
  OdeState s1 =
      integrate_rk45([n, invL](const OdeState& s) { return ham_rhs(s, n, invL); }, s0, 1.0, opt);
  Point out(n);
  for (int i = 0; i < d; ++i) out.c.a[static_cast<size_t>(i)] = s1[i];
  return out;
}

// Straight-segment CC upper bound: horizontal displacement plus an
// isoperimetric loop for the leftover vertical gap.
double segment_bound(const Point& p, const Point& q) {
  int n = p.n;
  double hor = 0;
  double cross = 0;
  for (int i = 0; i < n; ++i) {
    double dx = q.x(i) - p.x(i), dy = q.y(i) - p.y(i);
    hor += dx * dx + dy * dy;
    cross += dx * (p.y(i) + dy / 2.0);
  }
  hor = std::sqrt(hor);
  double leftover = std::fabs(q.z() - p.z() - cross);
  return hor + 2.0 * std::sqrt(M_PI * leftover);
}

} // namespace

DistanceEstimate dist_shooting(const Point& p, const Point& q, Mode mode, double L,
                               const ShootOptions& opt) {
  if (p.n != q.n) throw std::invalid_argument("dist_shooting: dimension mismatch");
  int n = p.n;
  int d = 2 * n + 1;
  double scale = std::max(1.0, segment_bound(p, q));
  Rng rng(opt.seed);

  DistanceEstimate est;
  est.method = "shooting";
  double best = -1;
  double invL = (mode == Mode::CC) ? 0.0 : 1.0 / L;

  // Deterministic covector seeds: horizontal aim and its quarter-turn across
  // a ladder of vertical momenta, a penalty-scaled vertical seed for the
  // Riemannian mode, then seeded random restarts.
  std::vector<VecD> seeds;
  VecD aim(d);
  for (int i = 0; i < n; ++i) {
    aim[x_index(n, i)] = q.x(i) - p.x(i);
    aim[y_index(n, i)] = q.y(i) - p.y(i);
  }
  for (double pz : {0.0, 0.9, -0.9, 1.8, -1.8, 2.7, -2.7, 3.6, -3.6}) {
    VecD s = aim;
    s[z_index(n)] = pz * (q.z() >= p.z() ? -1.0 : 1.0);
    if (s.norm() < 1e-9) s[x_index(n, 0)] = scale;
    seeds.push_back(s);
    VecD rot = s;
    for (int i = 0; i < n; ++i) {
      rot[x_index(n, i)] = -s[y_index(n, i)];
      rot[y_index(n, i)] = s[x_index(n, i)];
    }
    seeds.push_back(rot);
  }
  if (mode == Mode::Riemannian) {
    for (double f : {1.0, 0.5}) {
      VecD s(d);
      s[z_index(n)] = L * (q.z() - p.z()) * f;
      for (int i = 0; i < n; ++i) {
        s[x_index(n, i)] = q.x(i) - p.x(i);
        s[y_index(n, i)] = q.y(i) - p.y(i);
      }
      seeds.push_back(s);
    }
  }
  while (static_cast<int>(seeds.size()) < opt.restarts + 18) {
    VecD s(d);
    for (int i = 0; i < d; ++i) s.a[static_cast<size_t>(i)] = rng.uniform(-2.5, 2.5) * scale;
    seeds.push_back(s);
  }

  for (auto& seed : seeds) {
    VecD cov = seed;
    auto F = [&](const VecD& c) {
      VecD r(d);
      try {
        Point e = ham_endpoint(p, c, invL, opt.ode_tol);
        for (int i = 0; i < d; ++i) r[i] = e.c[i] - q.c[i];
      } catch (const std::exception&) {
        for (int i = 0; i < d; ++i) r[i] = 1e6 * scale; // reject this region
      }
      return r;
    };
    if (!levenberg_solve(F, cov, opt.target_tol * scale, opt.max_iterations)) continue;
    double len = ham_speed(cov, p, invL);
    if (best < 0 || len < best) best = len;
  }

  if (best < 0) {
    est.converged = false;
    est.method = "segment-bound";
    est.value = segment_bound(p, q);
    est.lower = 0;
    est.upper = est.value;
    est.rel_error = 1.0;
    return est;
  }
  est.value = best;
  est.lower = best * (1.0 - 1e-6);
  est.upper = best * (1.0 + 1e-6);
  est.rel_error = 1e-6;
  return est;
}

ConvergenceTable convergence_table(const Point& p, const Point& q,
                                   const std::vector<double>& L_schedule,
                                   const ShootOptions& sopt) {
  for (size_t i = 1; i < L_schedule.size(); ++i)
    if (!(L_schedule[i] > L_schedule[i - 1]))
      throw std::invalid_argument("convergence_table: schedule must increase");
  ConvergenceTable tab;
  DistanceEstimate cc = dist_shooting(p, q, Mode::CC, 1.0, sopt);
  tab.d_cc = cc.value;

  double prev = -1, prev_gap = -1;
  for (double L : L_schedule) {
    ConvergenceRow row;
    row.L = L;
    DistanceEstimate dl = dist_shooting(p, q, Mode::Riemannian, L, sopt);
    row.solver_ok = dl.converged;
    row.d_L = dl.value;
    row.gap = tab.d_cc - dl.value;
    if (prev >= 0 && row.d_L < prev - 1e-6) tab.monotone = false;
    if (row.d_L > tab.d_cc + 1e-6) tab.bounded_by_cc = false;
    if (prev_gap >= 0 && row.gap > prev_gap + 1e-6) tab.gap_shrinks = false;
    prev = row.d_L;
    prev_gap = row.gap;
    tab.rows.push_back(row);
  }
  return tab;
}

double homogeneity_check(double lambda, const Point& p, const Point& q, const GraphOptions& opt,
                         double* d_base, double* d_scaled) {
  if (!(lambda > 0)) throw std::invalid_argument("homogeneity_check: lambda must be positive");
  DistanceEstimate base = dist_graph(p, q, opt, Mode::CC);

  GraphOptions sopt = opt;
  sopt.box = opt.box * lambda;
  sopt.box_z = opt.box_z * lambda * lambda;
  double scaled_res = static_cast<double>(opt.resolution) * lambda;
  sopt.resolution = static_cast<int>(std::lround(scaled_res / 2.0) * 2);
  DistanceEstimate scaled =
      dist_graph(heisenberg::dilation(lambda, p), heisenberg::dilation(lambda, q), sopt, Mode::CC);

  if (d_base) *d_base = base.value;
  if (d_scaled) *d_scaled = scaled.value;
  return scaled.value / base.value;
}

} // namespace heiscr::subriemannian
