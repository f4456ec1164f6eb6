#pragma once

#include <cstdint>
#include <vector>

#include "heiscr/fields.hpp"
#include "heiscr/heisenberg.hpp"

namespace heiscr::sasaki_cone {

/// Element of the maximal Abelian subalgebra spanned by {xi, X_11..X_nn},
/// written a0*xi + sum_i b_i X_ii.
struct ConeElement {
  double a0 = 1.0;
  std::vector<double> b;
};

/// Reduced cone coordinates: nonnegative weights sorted ascending. Weights
/// are carried as exact rationals so the deformed fields evaluate exactly.
struct ConeParams {
  std::vector<Rational> a;

  static ConeParams from_doubles(const std::vector<double>& v);
  bool is_zero() const;
  int n() const { return static_cast<int>(a.size()); }
  std::vector<double> to_doubles() const;
};

/// eta(a0 xi + sum b_i X_ii) = a0 + sum b_i (x_i^2+y_i^2); positive on the
/// whole group iff a0 > 0 and every b_i >= 0. When negative, witness_radius
/// gives a radius in block witness_block past which positivity fails.
struct PositivityResult {
  bool positive = false;
  int witness_block = -1;
  double witness_radius = 0.0;
};

PositivityResult positivity(const ConeElement& e, int n);

/// Weyl / dilation reduction: scale a0 to 1 and sort the weights.
ConeParams reduce(const ConeElement& e);

/// The deformed structure S_a: xi_a = xi + sum a_i X_ii,
/// eta_a = eta / (1 + sum a_i (x_i^2+y_i^2)), Phi_a = Phi - (Phi xi_a)(x)eta_a,
/// g from the recipe (plus the Sasaki-normalized companion).
heisenberg::SasakiStructure deform(const ConeParams& a, int n);

/// Moment components h_i = eta_a(X_ii) = (x_i^2+y_i^2) / W_a; zero exactly on
/// the z-axis and invariant along the xi_a flow.
VecD moment_map(const ConeParams& a, const Point& p);

/// Closed-form flow of xi_a: each (x_i,y_i) block rotates rigidly at angular
/// rate 2 a_i and z advances by t plus a trigonometric correction.
Point reeb_flow_closed(const ConeParams& a, const Point& p0, double t);

/// Least-squares affine fit of the engine scalar curvature (Sasaki
/// normalization) against the moment components.
struct Calibration {
  double c0 = 0.0;
  std::vector<double> c;
  double residual = 0.0; // max abs fit error over the samples
};

Calibration calibrate_constants(const ConeParams& a, int n, int samples, uint64_t seed);
/// Same fit against an arbitrary metric (used for perturbed negative controls).
Calibration calibrate_metric(const MetricField& g, const ConeParams& a, int n,
                             const std::vector<Point>& pts);

/// Calibrated closed form c0 + sum c_i h_i(p); exactly -2n when a = 0.
double scalar_closed_form(const Calibration& cal, const ConeParams& a, const Point& p);

/// Closed-form constants printed in the classical closed form, mapped to this
/// project's moment convention: c0 = 2n(4|a|-1), c_i = -n(2n+7) a_i^2. Kept
/// in reports next to the calibrated values; they do not match.
Calibration literature_constants(const ConeParams& a, int n);

struct ExtremalityReport {
  double affine_residual = 0.0;
  double scalar_variance = 0.0;
};

ExtremalityReport extremality_report(const ConeParams& a, int n, int samples, uint64_t seed);

/// Phi-sectional curvature K(u, Phi_a u) of the Sasaki-normalized metric for
/// the i-th horizontal frame direction.
double phi_sectional(const heisenberg::SasakiStructure& S, const Point& p, int i);

} // namespace heiscr::sasaki_cone
