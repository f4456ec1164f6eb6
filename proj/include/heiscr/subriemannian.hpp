#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heiscr/fields.hpp"

namespace heiscr::subriemannian {

/// Piecewise-constant horizontal controls u(t) in R^{2n} on a uniform grid
/// over [0,1], lifted through the right-model horizontality z' = y . x'.
struct HorizontalPath {
  Point p0;
  std::vector<VecD> controls; // each of size 2n: (ux_1..ux_n, uy_1..uy_n)
  std::vector<Point> samples; // grid samples of the lift, controls.size()+1
};

/// Integrate the controls exactly (the lift of a piecewise-constant control
/// is closed-form per interval).
HorizontalPath lift(const std::vector<VecD>& controls, const Point& p0);

Point endpoint(const HorizontalPath& path);

/// Length in the transverse metric: integral of |u|. Throws if the stored
/// samples fail the horizontality residual check.
double cc_length(const HorizontalPath& path, double residual_tol = 1e-9);

/// Max horizontality defect of the sampled lift under the midpoint rule.
double horizontality_residual(const HorizontalPath& path);

enum class Mode { CC, Riemannian };

struct DistanceEstimate {
  double value = 0.0;
  std::string method;     // "graph" | "shooting" | "segment-bound"
  double lower = 0.0;     // model-based lower bracket
  double upper = 0.0;     // rigorous upper bound (graph paths are real paths)
  double rel_error = 0.0; // declared relative error model
  bool converged = true;  // false when shooting fell back
};

/// Lattice-graph oracle parameters. Grid spacing is h = 2*box/resolution in
/// each horizontal axis and h^2/2 in z, which makes every straight-chord lift
/// land exactly on a lattice plane; graph distances are therefore lengths of
/// genuine horizontal paths and upper-bound the CC distance.
struct GraphOptions {
  int resolution = 32; // steps per horizontal axis; must be even
  double box = 2.0;    // half-width in every x_i, y_i
  double box_z = 2.0;  // half-width in z
  int stencil = 3;     // max chord offset per block
};

/// Dijkstra over the lattice. CC mode uses horizontal chords plus composite
/// vertical loop moves; Riemannian mode adds straight vertical edges weighted
/// by sqrt(L). Deterministic for fixed options.
DistanceEstimate dist_graph(const Point& p, const Point& q, const GraphOptions& opt, Mode mode,
                            double L = 1.0);

struct ShootOptions {
  double ode_tol = 1e-11;
  double target_tol = 1e-9;
  int max_iterations = 60;
  int restarts = 24;
  uint64_t seed = 2718;
};

/// Two-point distance by shooting: the normal Pontryagin system for the
/// contact distribution in CC mode, the Levi-Civita geodesic equation of
/// g_L = g_T + L eta (x) eta in Riemannian mode. Returns the shortest
/// converged solution over deterministic restarts.
DistanceEstimate dist_shooting(const Point& p, const Point& q, Mode mode, double L = 1.0,
                               const ShootOptions& opt = {});

struct ConvergenceRow {
  double L = 0.0;
  double d_L = 0.0;
  double gap = 0.0; // d_cc - d_L
  bool solver_ok = true;
};

struct ConvergenceTable {
  double d_cc = 0.0;
  std::vector<ConvergenceRow> rows;
  bool monotone = true;       // d_L non-decreasing along the schedule
  bool bounded_by_cc = true;  // every d_L <= d_cc (within solver slack)
  bool gap_shrinks = true;
};

/// Penalized-metric blow-up table along an increasing L schedule.
ConvergenceTable convergence_table(const Point& p, const Point& q,
                                   const std::vector<double>& L_schedule,
                                   const ShootOptions& sopt = {});

/// d_cc(dil_lambda p, dil_lambda q) / d_cc(p, q) via the graph oracle; the
/// box is scaled with lambda so both queries resolve comparably.
double homogeneity_check(double lambda, const Point& p, const Point& q, const GraphOptions& opt,
                         double* d_base = nullptr, double* d_scaled = nullptr);

/// Rank of {V_i, U_i, [V_i, U_j]} at p (2n+1 when bracket generating) and of
/// the frame alone (2n).
int bracket_rank(const Point& p);
int horizontal_rank(const Point& p);

/// The penalized metric g_L = g_T + L eta (x) eta of the right model, as
/// polynomial entries: g^R + (L-1) eta (x) eta.
std::vector<std::vector<Polynomial>> penalized_metric_polys(int n, double L);

} // namespace heiscr::subriemannian
