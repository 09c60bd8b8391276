#include "rydhet/optimize.hpp"

#include <cmath>
#include <limits>

#include "rydhet/errors.hpp"
#include "rydhet/parallel.hpp"
#include "rydhet/readout.hpp"

namespace rydhet {
namespace {

double sq(double x) { return x * x; }

double checked(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  if (std::isnan(v))
    throw NumericalError("objective is NaN at x = " + std::to_string(x) + " rad/s", x);
  return v;
}

struct Refined {
  double x, fx, bracket;
  long evals;
};

// Golden-section maximization of sign * f on [a, b]; (x0, f0) is the best
// coarse point, kept if nothing better is found.
Refined golden_max(const std::function<double(double)>& f, double sign, double a, double b,
                   double x0, double f0, int iters) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  long evals = 0;
  auto g = [&](double x) {
    ++evals;
    return sign * checked(f, x);
  };
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int i = 0; i < iters; ++i) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + invphi * (b - a);
      g2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - invphi * (b - a);
      g1 = g(x1);
    }
  }
  Refined r{x0, f0, b - a, evals};
  if (g1 > sign * r.fx) r = {x1, sign * g1, b - a, evals};
  if (g2 > sign * r.fx) r = {x2, sign * g2, b - a, evals};
  return r;
}

}  // namespace

double attenuation_constant(const AtomSystem& atom, double cell_length, ChiSign sign) {
  if (!(cell_length > 0)) throw DomainError("cell_length", "must be > 0");
  return chi_sign_factor(sign) * atom.wavevector() * cell_length * atom.chi_prefactor() /
         atom.gamma2();
}

double delta_L_star_for_constant(const AtomSystem& atom, const DriveConfig& drive,
                                 double c) {
  const double p2 = sq(drive.omega_p()), c2 = sq(drive.omega_c()), l2 = sq(drive.omega_L());
  const double g2 = sq(atom.gamma2());
  const double u = p2 * (p2 + c2);
  const double v = l2 * (2 * p2 + g2);
  const double cz = c * g2 * l2;
  const double radicand = (cz - 2 * u + std::sqrt(4 * sq(u + v) + sq(cz))) / 2;
  if (!(radicand >= 0))
    throw NumericalError("delta_L_star: negative radicand (attenuation constant too negative)",
                         c);
  return p2 * drive.omega_L() / (2 * u) * std::sqrt(radicand);
}

double delta_L_star(const AtomSystem& atom, const DriveConfig& drive, double cell_length,
                    ChiSign sign) {
  return delta_L_star_for_constant(atom, drive, attenuation_constant(atom, cell_length, sign));
}

double delta_L_star_star(const AtomSystem& atom, const DriveConfig& drive) {
  const double p2 = sq(drive.omega_p()), c2 = sq(drive.omega_c()), l2 = sq(drive.omega_L());
  return l2 / (2 * (p2 + c2)) * std::sqrt(2 * p2 + sq(atom.gamma2()));
}

GridResult grid_refine_argmax(const std::function<double(double)>& objective, double lo,
                              double hi, int coarse_n, int refine_iters, unsigned threads) {
  if (!(hi > lo)) throw DomainError("window", "requires lo < hi");
  if (coarse_n < 3) throw DomainError("coarse_n", "need at least 3 grid points");
  if (refine_iters < 0) throw DomainError("refine_iters", "must be >= 0");

  const double step = (hi - lo) / (coarse_n - 1);
  auto at = [&](int i) { return i == coarse_n - 1 ? hi : lo + i * step; };
  std::vector<double> values(static_cast<std::size_t>(coarse_n));
  parallel_for(
      values.size(), [&](std::size_t i) { values[i] = checked(objective, at(int(i))); },
      threads);

  int imax = 0, imin = 0;
  for (int i = 1; i < coarse_n; ++i) {
    if (values[i] > values[imax]) imax = i;
    if (values[i] < values[imin]) imin = i;
  }

  auto refine = [&](int i, double sign) {
    const double a = at(std::max(i - 1, 0));
    const double b = at(std::min(i + 1, coarse_n - 1));
    return golden_max(objective, sign, a, b, at(i), values[i], refine_iters);
  };
  const Refined up = refine(imax, 1.0);
  const Refined down = refine(imin, -1.0);

  GridResult r;
  const bool take_up = std::abs(up.fx) >= std::abs(down.fx);
  const Refined& best = take_up ? up : down;
  const Refined& other = take_up ? down : up;
  r.argmax = best.x;
  r.value = best.fx;
  r.partner_argmax = other.x;
  r.partner_value = other.fx;
  r.bracket = best.bracket;
  r.evaluations = coarse_n + up.evals + down.evals;
  return r;
}

const char* to_string(Problem p) {
  switch (p) {
    case Problem::P1: return "p1";
    case Problem::P2: return "p2";
    case Problem::P3: return "p3";
    case Problem::P4: return "p4";
    case Problem::P5: return "p5";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::GridRefine: return "grid_refine";
    case Method::Sweep: return "sweep";
  }
  return "?";
}

std::optional<Problem> parse_problem(const std::string& s) {
  for (Problem p : {Problem::P1, Problem::P2, Problem::P3, Problem::P4, Problem::P5})
    if (s == to_string(p)) return p;
  return std::nullopt;
}

std::vector<double> OptimizeOptions::default_gamma_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(mhz_to_rad_s(0.01 * i));
  return g;
}

namespace {

OptimizationReport solve_local(bool thin, const AtomSystem& atom, const DriveConfig& drive,
                               const ReadoutConfig& readout, const OptimizeOptions& o) {
  const DetuningScenario zero{DetuningAxis::LocalMicrowave, 0.0};
  const AtomSystem a = scenario_atom(atom, zero);
  const DriveConfig d = scenario_drive(drive, zero);
  auto kappa = [&](double delta) {
    const auto dec = chi_decompose_local(a, d, delta);
    return thin ? conversion_high_transmittance(dec, a, readout)
                : conversion_general(dec, a, readout);
  };

  OptimizationReport r;
  r.problem = thin ? Problem::P2 : Problem::P1;
  r.axis = DetuningAxis::LocalMicrowave;
  r.method = Method::ClosedForm;
  r.optimum = thin ? delta_L_star_star(a, d)
                   : delta_L_star(a, d, a.cell_length(), readout.chi_sign);

  const GridResult g =
      grid_refine_argmax(kappa, o.window_lo, o.window_hi, o.coarse_n, o.refine_iters, o.threads);
  const double tol = o.crosscheck_rel_tol * r.optimum + g.bracket;
  if (std::abs(std::abs(g.argmax) - r.optimum) > tol)
    throw ConsistencyError(std::string(thin ? "delta_L_star_star" : "delta_L_star") +
                               ": closed form " + std::to_string(r.optimum) +
                               " rad/s disagrees with grid argmax " +
                               std::to_string(g.argmax) + " rad/s",
                           r.optimum, g.argmax);
  r.grid = g;
  r.kappa_at_optimum = kappa(r.optimum);
  r.kappa_at_zero = kappa(0.0);
  r.partner_optimum = -r.optimum;
  r.partner_kappa = kappa(-r.optimum);
  return r;
}

OptimizationReport solve_laser(DetuningAxis axis, const AtomSystem& atom,
                               const DriveConfig& drive, const ReadoutConfig& readout,
                               const OptimizeOptions& o) {
  const DetuningScenario zero{axis, 0.0};
  const AtomSystem a = scenario_atom(atom, zero);
  const DriveConfig d = scenario_drive(drive, zero);
  auto kappa = [&](double delta) {
    const auto dec = axis == DetuningAxis::ProbeLaser ? chi_decompose_probe(a, d, delta)
                                                      : chi_decompose_coupling(a, d, delta);
    return conversion_general(dec, a, readout);
  };
  OptimizationReport r;
  r.problem = axis == DetuningAxis::ProbeLaser ? Problem::P3 : Problem::P4;
  r.axis = axis;
  r.method = Method::GridRefine;
  const GridResult g =
      grid_refine_argmax(kappa, o.window_lo, o.window_hi, o.coarse_n, o.refine_iters, o.threads);
  r.grid = g;
  r.optimum = g.argmax;
  r.kappa_at_optimum = g.value;
  r.partner_optimum = g.partner_argmax;
  r.partner_kappa = g.partner_value;
  r.kappa_at_zero = kappa(0.0);
  return r;
}

OptimizationReport solve_transit(const AtomSystem& atom, const DriveConfig& drive,
                                 const ReadoutConfig& readout, const OptimizeOptions& o) {
  if (o.gamma_values.empty()) throw DomainError("gamma_values", "empty transit-rate grid");
  const DriveConfig d =
      drive.omega_s() > 0
          ? drive
          : drive.modified([&](DriveParams& p) { p.omega_s = o.extraction_omega_s; });

  OptimizationReport r;
  r.problem = Problem::P5;
  r.axis = DetuningAxis::TransitRate;
  r.method = Method::Sweep;
  r.curve.resize(o.gamma_values.size());
  parallel_for(
      r.curve.size(),
      [&](std::size_t i) {
        const DetuningScenario s{DetuningAxis::TransitRate, o.gamma_values[i]};
        const AtomSystem a = scenario_atom(atom, s);
        const auto dec = chi_decompose_numeric(a, d, s);
        r.curve[i] = {s.value, conversion_general(dec, a, readout), 0.0};
      },
      o.threads);

  std::size_t ref = 0, best = 0;
  for (std::size_t i = 0; i < r.curve.size(); ++i) {
    if (r.curve[i].x == 0.0) ref = i;
    if (std::abs(r.curve[i].kappa) > std::abs(r.curve[best].kappa)) best = i;
  }
  r.kappa_at_zero = r.curve[ref].kappa;
  for (auto& p : r.curve) p.gain_db = gain_db(p.kappa, r.kappa_at_zero);
  r.optimum = r.curve[best].x;
  r.kappa_at_optimum = r.curve[best].kappa;
  r.partner_optimum = r.optimum;
  r.partner_kappa = r.kappa_at_optimum;

  r.curve_strictly_decreasing = true;
  for (std::size_t i = 1; i < r.curve.size(); ++i)
    if (!(r.curve[i].x > r.curve[i - 1].x &&
          std::abs(r.curve[i].kappa) < std::abs(r.curve[i - 1].kappa)))
      r.curve_strictly_decreasing = false;
  if (!r.curve_strictly_decreasing)
    r.warnings.emplace_back("|kappa(gamma)| is not strictly decreasing on the grid");
  return r;
}

}  // namespace

OptimizationReport solve(Problem problem, const AtomSystem& atom, const DriveConfig& drive,
                         const ReadoutConfig& readout, const OptimizeOptions& opts) {
  readout.validate();
  OptimizationReport r;
  switch (problem) {
    case Problem::P1: r = solve_local(false, atom, drive, readout, opts); break;
    case Problem::P2: r = solve_local(true, atom, drive, readout, opts); break;
    case Problem::P3: r = solve_laser(DetuningAxis::ProbeLaser, atom, drive, readout, opts); break;
    case Problem::P4:
      r = solve_laser(DetuningAxis::CouplingLaser, atom, drive, readout, opts);
      break;
    case Problem::P5: r = solve_transit(atom, drive, readout, opts); break;
  }
  r.window_lo = opts.window_lo;
  r.window_hi = opts.window_hi;
  r.coarse_n = opts.coarse_n;
  r.refine_iters = opts.refine_iters;
  r.gain_db = gain_db(r.kappa_at_optimum, r.kappa_at_zero);
  if (!drive.perturbative())
    r.warnings.emplace_back("omega_s >= omega_L/10: outside the weak-signal regime");
  return r;
}

}  // namespace rydhet
