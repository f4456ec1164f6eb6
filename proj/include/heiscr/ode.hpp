#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "heiscr/fields.hpp"

namespace heiscr {

/// Fixed-capacity ODE state (enough for cotangent lifts of R^9).
struct OdeState {
  int n = 0;
  std::array<double, 20> y{};

  OdeState() = default;
  explicit OdeState(int dim) : n(dim) { y.fill(0.0); }

  double& operator[](int i) { return y[static_cast<size_t>(i)]; }
  double operator[](int i) const { return y[static_cast<size_t>(i)]; }
};

struct OdeOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  long max_steps = 4000000;
};

/// Dormand-Prince 5(4) with step-size control. Integrates y' = f(y) from 0 to
/// t (t may be negative). Throws on step-size underflow.
inline OdeState integrate_rk45(const std::function<OdeState(const OdeState&)>& f, OdeState y0,
                               double t, const OdeOptions& opt = {}) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                      b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2;
  (void)c3;
  (void)c4;
  (void)c5;

  if (t == 0.0) return y0;
  double dir = t > 0 ? 1.0 : -1.0;
  double remaining = std::fabs(t);
  double h = std::min(opt.initial_step, remaining);
  OdeState y = y0;
  long steps = 0;

  auto axpy = [](OdeState r, double s, const OdeState& v) {
    for (int i = 0; i < r.n; ++i) r[i] += s * v[i];
    return r;
  };

  while (remaining > 0) {
    if (++steps > opt.max_steps) throw std::runtime_error("integrate_rk45: step budget exceeded");
    h = std::min(h, remaining);
    double hs = dir * h;

    OdeState k1 = f(y);
    OdeState k2 = f(axpy(y, hs * a21, k1));
    OdeState k3 = f(axpy(axpy(y, hs * a31, k1), hs * a32, k2));
    OdeState k4 = f(axpy(axpy(axpy(y, hs * a41, k1), hs * a42, k2), hs * a43, k3));
    OdeState k5 = f(axpy(axpy(axpy(axpy(y, hs * a51, k1), hs * a52, k2), hs * a53, k3), hs * a54, k4));
    OdeState k6 = f(axpy(
        axpy(axpy(axpy(axpy(y, hs * a61, k1), hs * a62, k2), hs * a63, k3), hs * a64, k4), hs * a65,
        k5));

    OdeState ynew = y;
    for (int i = 0; i < y.n; ++i)
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    OdeState k7 = f(ynew);

    double err = 0;
    for (int i = 0; i < y.n; ++i) {
      double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = opt.abs_tol + opt.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
      err = std::max(err, std::fabs(e) / sc);
    }

    if (err <= 1.0) {
      y = ynew;
      remaining -= h;
    }
    double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    factor = std::min(5.0, std::max(0.2, factor));
    h *= factor;
    if (h < opt.min_step) throw std::runtime_error("integrate_rk45: step size underflow");
  }
  return y;
}

/// Flow of a polynomial vector field for time t.
inline Point flow(const PolyVectorField& X, const Point& p0, double t, const OdeOptions& opt = {}) {
  int d = X.dim();
  OdeState y0(d);
  for (int i = 0; i < d; ++i) y0[i] = p0.c[i];
  auto f = [&X, d](const OdeState& s) {
    Point p(X.n);
    for (int i = 0; i < d; ++i) p.c.a[static_cast<size_t>(i)] = s[i];
    VecD v = X.eval(p);
    OdeState dy(d);
    for (int i = 0; i < d; ++i) dy[i] = v[i];
    return dy;
  };
  OdeState yt = integrate_rk45(f, y0, t, opt);
  Point out(X.n);
  for (int i = 0; i < d; ++i) out.c.a[static_cast<size_t>(i)] = yt[i];
  return out;
}

} // namespace heiscr
