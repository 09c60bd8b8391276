#include "rydhet/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "rydhet/errors.hpp"
#include "rydhet/liouvillian.hpp"
#include "rydhet/optimize.hpp"
#include "rydhet/parallel.hpp"
#include "rydhet/sweep.hpp"

namespace rydhet {
namespace {

using cplx = std::complex<double>;

constexpr double kWindowMhz = 50.0;
constexpr int kDerivativeGridPoints = 21;
// Absolute floor for relative deviations of rho21 (|rho21| <= 1/2). Grid
// points can sit on exact zeros (4 Delta^2 = Omega_L^2), where the solve
// returns O(1e-15).
constexpr double kRhoFloor = 1e-5;

double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), kRhoFloor});
}

double grid_x(int i, int n, double lo, double hi) {
  return n == 1 ? lo : (lo * (n - 1 - i) + hi * i) / (n - 1);
}

// Evaluates deviation(i) for i < n in parallel; reports the maximum.
template <class F, class L>
ValidationCheck grid_check(std::string name, double tol, int n, F&& deviation, L&& label,
                           unsigned threads) {
  ValidationCheck c;
  c.name = std::move(name);
  c.tolerance = tol;
  try {
    std::vector<double> dev(static_cast<std::size_t>(n));
    parallel_for(dev.size(), [&](std::size_t i) { dev[i] = deviation(int(i)); }, threads);
    int worst = 0;
    for (int i = 0; i < n; ++i) {
      if (std::isnan(dev[i])) {
        worst = i;
        break;
      }
      if (dev[i] > dev[worst]) worst = i;
    }
    c.max_deviation = dev[worst];
    c.location = label(worst);
    c.passed = dev[worst] <= tol;
  } catch (const std::exception& e) {
    c.error = e.what();
    c.passed = false;
  }
  return c;
}

std::string mhz_label(const char* axis, double w) {
  return std::string(axis) + "=" + format_double(rad_s_to_mhz(w)) + " MHz";
}

using Decompose = SusceptibilityDecomposition (*)(const AtomSystem&, const DriveConfig&, double);

struct Axis {
  DetuningAxis axis;
  const char* closed_form_name;
  const char* decompose_name;
  Decompose decompose;
};

const Axis kAxes[] = {
    {DetuningAxis::LocalMicrowave, "rho21_local_detuned", "chi_decompose_local",
     chi_decompose_local},
    {DetuningAxis::ProbeLaser, "rho21_probe_detuned", "chi_decompose_probe",
     chi_decompose_probe},
    {DetuningAxis::CouplingLaser, "rho21_coupling_detuned", "chi_decompose_coupling",
     chi_decompose_coupling},
};

const ClosedFormSet::Detuned& form_for(const ClosedFormSet& f, DetuningAxis a) {
  switch (a) {
    case DetuningAxis::ProbeLaser: return f.probe_detuned;
    case DetuningAxis::CouplingLaser: return f.coupling_detuned;
    default: return f.local_detuned;
  }
}

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string ValidationReport::text() const {
  std::string s;
  int failed = 0;
  for (const auto& c : checks) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " max_dev=%.3e tol=%.1e", c.max_deviation, c.tolerance);
    s += (c.passed ? "PASS " : "FAIL ") + c.name + buf;
    if (!c.location.empty()) s += " at " + c.location;
    if (!c.error.empty()) s += " error: " + c.error;
    s += "\n";
    failed += !c.passed;
  }
  s += failed ? std::to_string(failed) + " of " + std::to_string(checks.size()) +
                    " checks failed\n"
              : "all " + std::to_string(checks.size()) + " checks passed\n";
  return s;
}

ValidationReport run_validation(const RunConfig& config, const ClosedFormSet& forms,
                                unsigned threads) {
  const ResolvedConfig rc = resolve(config);
  const double window = mhz_to_rad_s(kWindowMhz);
  const int n = kValidationGridPoints;
  ValidationReport rep;

  // Resonant: sweep the beat phase with a large signal so the effective
  // local Rabi frequency varies over [Omega_L / 2, 3 Omega_L / 2].
  {
    const AtomSystem a = scenario_atom(rc.atom, {});
    const DriveConfig d = rc.drive.modified([](DriveParams& p) {
      p.delta_p = p.delta_c = p.delta_L = 0;
      p.omega_s = 0.5 * p.omega_L;
    });
    auto phase = [&](int i) { return 2 * std::numbers::pi * i / n; };
    rep.checks.push_back(grid_check(
        "rho21_resonant", kOracleRelTol, n,
        [&](int i) {
          return rel(forms.resonant(a, d, phase(i)), steady_state(a, d, phase(i)).rho21());
        },
        [&](int i) { return "phase=" + format_double(phase(i)) + " rad"; }, threads));
  }

  for (const Axis& ax : kAxes) {
    const AtomSystem a = scenario_atom(rc.atom, {ax.axis, 0});
    auto x = [&](int i) { return grid_x(i, n, -window, window); };
    const auto& form = form_for(forms, ax.axis);
    rep.checks.push_back(grid_check(
        ax.closed_form_name, kOracleRelTol, n,
        [&](int i) {
          const DriveConfig d = scenario_drive(rc.drive, {ax.axis, x(i)});
          return rel(form(a, d, x(i), std::nullopt), steady_state(a, d, d.phi_s()).rho21());
        },
        [&](int i) { return mhz_label(to_string(ax.axis), x(i)); }, threads));
  }

  // Each detuned form at zero detuning reduces to the resonant form.
  {
    const AtomSystem a = scenario_atom(rc.atom, {});
    const DriveConfig d = scenario_drive(rc.drive, {});
    rep.checks.push_back(grid_check(
        "reduction_chain", kReductionRelTol, 3,
        [&](int i) {
          const cplx r0 = forms.resonant(a, d, std::nullopt);
          return rel(form_for(forms, kAxes[i].axis)(a, d, 0.0, std::nullopt), r0);
        },
        [&](int i) { return std::string(kAxes[i].closed_form_name) + " at 0"; }, threads));
  }

  // Im rho21 is even and Re rho21 odd in the local detuning.
  {
    const AtomSystem a = scenario_atom(rc.atom, {});
    const DriveConfig d = scenario_drive(rc.drive, {});
    auto x = [&](int i) { return grid_x(i, n, 0, window); };
    rep.checks.push_back(grid_check(
        "parity_local_detuning", kReductionRelTol, n,
        [&](int i) {
          const cplx p = forms.local_detuned(a, d, x(i), std::nullopt);
          const cplx m = forms.local_detuned(a, d, -x(i), std::nullopt);
          return rel(p, cplx(-m.real(), m.imag()));
        },
        [&](int i) { return mhz_label("delta_l", x(i)); }, threads));
  }

  for (const Axis& ax : kAxes) {
    const AtomSystem a = scenario_atom(rc.atom, {ax.axis, 0});
    const int m = kDerivativeGridPoints;
    auto x = [&](int i) { return grid_x(i, m, -window, window); };
    std::vector<SusceptibilityDecomposition> closed(m);
    double scale = 0;
    try {
      for (int i = 0; i < m; ++i) {
        closed[i] = ax.decompose(a, scenario_drive(rc.drive, {ax.axis, 0}), x(i));
        scale = std::max(scale, std::abs(closed[i].chi1));
      }
    } catch (const std::exception&) {
      scale = std::numeric_limits<double>::quiet_NaN();
    }

    // chi1 is the derivative of Im chi with respect to the local Rabi
    // frequency at S = 0.
    rep.checks.push_back(grid_check(
        std::string(ax.decompose_name) + ".chi1_vs_finite_difference", kFiniteDifferenceRelTol,
        m,
        [&](int i) {
          const DriveConfig d = scenario_drive(rc.drive, {ax.axis, x(i)});
          const double h = 1e-4 * d.omega_L();
          auto im_chi_at = [&](double omega_L) {
            const DriveConfig q = d.modified([&](DriveParams& p) {
              p.omega_L = omega_L;
              p.omega_s = 0;
            });
            return im_chi_from_rho21(a, q, steady_state(a, q, 0.0).rho21());
          };
          const double fd = (im_chi_at(d.omega_L() + h) - im_chi_at(d.omega_L() - h)) / (2 * h);
          return std::abs(fd - closed[i].chi1) / scale;
        },
        [&](int i) { return mhz_label(to_string(ax.axis), x(i)); }, threads));

    rep.checks.push_back(grid_check(
        std::string(ax.decompose_name) + ".chi1_vs_harmonic_extraction", kHarmonicRelTol, m,
        [&](int i) {
          const DriveConfig d = rc.drive.modified(
              [](DriveParams& p) { p.omega_s = mhz_to_rad_s(1e-4); });
          const auto num = chi_decompose_numeric(a, d, {ax.axis, x(i)});
          return std::abs(num.chi1 - closed[i].chi1) / scale;
        },
        [&](int i) { return mhz_label(to_string(ax.axis), x(i)); }, threads));
  }

  // Closed-form optima against the grid search; solve() throws on mismatch.
  for (Problem p : {Problem::P1, Problem::P2}) {
    const double lo = rad_s_to_mhz(0.5 * rc.drive.omega_L());
    const double hi = rad_s_to_mhz(1.5 * rc.drive.omega_L());
    rep.checks.push_back(grid_check(
        p == Problem::P1 ? "delta_L_star" : "delta_L_star_star",
        rc.optimize.crosscheck_rel_tol, 3,
        [&](int i) {
          const double omega_L = mhz_to_rad_s(grid_x(i, 3, lo, hi));
          const DriveConfig d = rc.drive.modified([&](DriveParams& q) { q.omega_L = omega_L; });
          const auto r = solve(p, rc.atom, d, rc.readout, rc.optimize);
          return std::max(0.0, std::abs(std::abs(r.grid->argmax) - r.optimum) - r.grid->bracket) /
                 r.optimum;
        },
        [&](int i) { return "omega_l=" + format_double(grid_x(i, 3, lo, hi)) + " MHz"; },
        threads));
  }

  {
    const AtomSystem a = scenario_atom(rc.atom, {});
    const double c = attenuation_constant(a, a.cell_length(), rc.readout.chi_sign);
    rep.checks.push_back(grid_check(
        "delta_L_star_small_attenuation_limit", 1e-6, 1,
        [&](int) {
          const double s = delta_L_star_star(a, rc.drive);
          return std::abs(delta_L_star_for_constant(a, rc.drive, 1e-9 * c) - s) / s;
        },
        [&](int) { return "C=" + format_double(1e-9 * c); }, threads));
  }
  return rep;
}

}  // namespace rydhet
