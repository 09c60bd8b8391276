#pragma once

// Adaptive Dormand-Prince 5(4) integrator with FSAL and a PI step controller.
// State is any Eigen column vector (real or complex).

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Core>

#include "rydhet/errors.hpp"

namespace rydhet::ode {

struct Tolerances {
  double atol = 1e-10;
  double rtol = 1e-10;
  double dt_initial = 0;  // 0 -> heuristic
  double dt_max = std::numeric_limits<double>::infinity();
  double dt_min = 1e-22;
  long max_steps = 200'000'000;
};

struct Stats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
};

/// Integrates y' = rhs(t, y) from t0 to t_end. `observe(t, y)` is called for
/// the initial point and every accepted step; returning false stops early.
/// Returns the time reached.
template <class Vec, class Rhs, class Observer>
double integrate(Rhs&& rhs, Vec& y, double t0, double t_end, const Tolerances& tol,
                 Observer&& observe, Stats* stats = nullptr) {
  // Butcher tableau (Dormand & Prince 1980).
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Stats local;
  Stats& st = stats ? *stats : local;

  double t = t0;
  if (!observe(t, static_cast<const Vec&>(y))) return t;
  if (!(t_end > t0)) return t;

  Vec k1 = rhs(t, y);
  ++st.rhs_evaluations;

  auto err_norm = [&](const Vec& err, const Vec& y0, const Vec& y1) {
    double m = 0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
      const double sc = tol.atol + tol.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      m = std::max(m, std::abs(err[i]) / sc);
    }
    return m;
  };

  double h = tol.dt_initial;
  if (!(h > 0)) {
    // Hairer's starting-step heuristic, first-order part only.
    double d0 = 0, d1 = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc = tol.atol + tol.rtol * std::abs(y[i]);
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1 = std::max(d1, std::abs(k1[i]) / sc);
    }
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * (t_end - t0) : 0.01 * d0 / d1;
  }
  h = std::min({h, tol.dt_max, t_end - t0});

  double err_prev = 1e-4;
  bool last_rejected = false;
  Vec ytmp, k2, k3, k4, k5, k6, k7, ynew, err;

  while (t < t_end) {
    if (st.accepted + st.rejected >= tol.max_steps)
      throw IntegrationError("step budget exhausted", t);
    if (h < tol.dt_min) throw IntegrationError("step size underflow", t);
    const bool final_step = t + h >= t_end;
    if (final_step) h = t_end - t;

    ytmp = y + h * (a21 * k1);
    k2 = rhs(t + c2 * h, ytmp);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    k3 = rhs(t + c3 * h, ytmp);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    k4 = rhs(t + c4 * h, ytmp);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    k5 = rhs(t + c5 * h, ytmp);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    k6 = rhs(t + h, ytmp);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = rhs(t + h, ynew);
    st.rhs_evaluations += 6;
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double en = err_norm(err, y, ynew);
    if (!std::isfinite(en)) throw IntegrationError("non-finite state", t);

    if (en <= 1.0) {
      ++st.accepted;
      t = final_step ? t_end : t + h;
      y = ynew;
      k1 = k7;
      if (!observe(t, static_cast<const Vec&>(y))) return t;
      // PI controller (beta = 0.04 as in DOPRI5).
      double fac = 0.9 * std::pow(en, -0.2 + 0.75 * 0.04) * std::pow(err_prev, 0.04);
      fac = std::clamp(fac, 0.2, 10.0);
      if (last_rejected) fac = std::min(fac, 1.0);
      h = std::min(h * fac, tol.dt_max);
      err_prev = std::max(en, 1e-4);
      last_rejected = false;
    } else {
      ++st.rejected;
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
      last_rejected = true;
    }
  }
  return t;
}

}  // namespace rydhet::ode
