#pragma once

// Operating-point search for the heterodyne conversion coefficient.
//
//   P1  general case,          local microwave detuning  (closed form + grid check)
//   P2  high transmittance,    local microwave detuning  (closed form + grid check)
//   P3  general case,          probe laser detuning      (grid refine)
//   P4  general case,          coupling laser detuning   (grid refine)
//   P5  general case,          transit relaxation rate   (numerical sweep)

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rydhet/model.hpp"
#include "rydhet/susceptibility.hpp"

namespace rydhet {

/// Local microwave detuning maximizing |kappa| (general case). Positive root;
/// -delta_L_star is the mirror extremum. The attenuation constant
/// C = 2 k L N mu^2 / (hbar eps0 gamma2) enters with the sign of `sign`.
double delta_L_star(const AtomSystem& atom, const DriveConfig& drive, double cell_length,
                    ChiSign sign = ChiSign::Physical);

/// Same, with the attenuation constant given directly (C = 0 gives delta_L_star_star).
double delta_L_star_for_constant(const AtomSystem& atom, const DriveConfig& drive,
                                 double attenuation_constant);

/// Attenuation constant C used by delta_L_star.
double attenuation_constant(const AtomSystem& atom, double cell_length, ChiSign sign);

/// Local microwave detuning maximizing |chi1| (thin medium).
double delta_L_star_star(const AtomSystem& atom, const DriveConfig& drive);

struct GridResult {
  double argmax = 0;          // extremum with the larger |objective|
  double value = 0;           // signed objective there
  double partner_argmax = 0;  // the opposite-sign extremum
  double partner_value = 0;
  double bracket = 0;         // final golden-section bracket width
  long evaluations = 0;
};

/// Coarse scan of `coarse_n` points on [lo, hi], then golden-section
/// refinement of both the signed maximum and the signed minimum inside their
/// neighbouring grid cells. Returns the one with the larger magnitude (plus
/// the other as partner). NaN objective values throw NumericalError carrying
/// the offending abscissa.
GridResult grid_refine_argmax(const std::function<double(double)>& objective, double lo,
                              double hi, int coarse_n = 2001, int refine_iters = 60,
                              unsigned threads = 0);

enum class Problem { P1, P2, P3, P4, P5 };
enum class Method { ClosedForm, GridRefine, Sweep };

const char* to_string(Problem p);
const char* to_string(Method m);
std::optional<Problem> parse_problem(const std::string& s);

struct OptimizeOptions {
  double window_lo = mhz_to_rad_s(-50.0);
  double window_hi = mhz_to_rad_s(50.0);
  int coarse_n = 2001;
  int refine_iters = 60;
  /// Closed-form vs grid agreement required by P1/P2, relative to the optimum.
  double crosscheck_rel_tol = 1e-6;
  /// P5 transit-rate grid (rad/s).
  std::vector<double> gamma_values = default_gamma_grid();
  /// Signal Rabi frequency used for numerical harmonic extraction when the
  /// drive has omega_s = 0.
  double extraction_omega_s = mhz_to_rad_s(1e-4);
  unsigned threads = 0;

  static std::vector<double> default_gamma_grid();  // 0, 2pi 10 kHz, ..., 2pi 200 kHz
};

struct CurvePoint {
  double x = 0;  // rad/s
  double kappa = 0;
  double gain_db = 0;
};

struct OptimizationReport {
  Problem problem = Problem::P1;
  DetuningAxis axis = DetuningAxis::LocalMicrowave;
  Method method = Method::ClosedForm;
  double optimum = 0;  // rad/s
  double kappa_at_optimum = 0;
  double kappa_at_zero = 0;
  double gain_db = 0;
  /// Other signed extremum (mirror root for P1/P2, opposite lobe for P3/P4).
  double partner_optimum = 0;
  double partner_kappa = 0;
  /// Grid cross-check (P1/P2) or grid result (P3/P4).
  std::optional<GridResult> grid;
  double window_lo = 0, window_hi = 0;
  int coarse_n = 0, refine_iters = 0;
  /// P5 degradation curve; empty otherwise.
  std::vector<CurvePoint> curve;
  bool curve_strictly_decreasing = false;
  std::vector<std::string> warnings;
};

/// Solves one problem. Scenario assumption sets (zero gamma3, gamma4, gamma_c,
/// and gamma_t except for P5) are applied to `atom` internally. P1/P2 throw
/// ConsistencyError if the closed form and the grid search disagree.
OptimizationReport solve(Problem problem, const AtomSystem& atom, const DriveConfig& drive,
                         const ReadoutConfig& readout, const OptimizeOptions& opts = {});

inline OptimizationReport solve_p1(const AtomSystem& a, const DriveConfig& d,
                                   const ReadoutConfig& r, const OptimizeOptions& o = {}) {
  return solve(Problem::P1, a, d, r, o);
}
inline OptimizationReport solve_p2(const AtomSystem& a, const DriveConfig& d,
                                   const ReadoutConfig& r, const OptimizeOptions& o = {}) {
  return solve(Problem::P2, a, d, r, o);
}
inline OptimizationReport solve_p3(const AtomSystem& a, const DriveConfig& d,
                                   const ReadoutConfig& r, const OptimizeOptions& o = {}) {
  return solve(Problem::P3, a, d, r, o);
}
inline OptimizationReport solve_p4(const AtomSystem& a, const DriveConfig& d,
                                   const ReadoutConfig& r, const OptimizeOptions& o = {}) {
  return solve(Problem::P4, a, d, r, o);
}
inline OptimizationReport solve_p5(const AtomSystem& a, const DriveConfig& d,
                                   const ReadoutConfig& r, const OptimizeOptions& o = {}) {
  return solve(Problem::P5, a, d, r, o);
}

}  // namespace rydhet
