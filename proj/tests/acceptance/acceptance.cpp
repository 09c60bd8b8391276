// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "rydhet/config.hpp"
#include "rydhet/errors.hpp"
#include "rydhet/liouvillian.hpp"
#include "rydhet/optimize.hpp"
#include "rydhet/readout.hpp"
#include "rydhet/susceptibility.hpp"
#include "rydhet/sweep.hpp"
#include "support.hpp"

#ifndef RYDHET_RECIPES_DIR
#error "RYDHET_RECIPES_DIR must point at the sweep recipes"
#endif

using namespace rydhet;
using namespace rydhet::literals;
using rydhet::test::Drawer;
using rydhet::test::rel_err;

namespace {

// Tolerances.
constexpr double kOracleTol = 1e-9;
constexpr double kOracleFloor = 1e-5;  // |rho21| floor; closed forms vanish exactly at 4 Delta^2 = Omega_L^2
constexpr int kOracleGrid = 101;
constexpr double kOptimumTol = 10_kHz;
constexpr double kLimitTol = 1e-6;
constexpr double kGainTol = 0.05;  // dB
constexpr double kSmallParam = 0.1;
constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kEvolveTol = 1e-6;
constexpr double kHarmonicTol = 5e-3;
constexpr double kExactTol = 1e-12;

const double kLocalRabi[] = {2_MHz, 4_MHz, 6_MHz};

struct Outcome {
  bool passed = true;
  std::vector<std::string> details;

  void require(bool ok, std::string line) {
    passed = passed && ok;
    details.push_back((ok ? "  ok   " : "  FAIL ") + std::move(line));
  }
  void note(std::string line) { details.push_back("  .    " + std::move(line)); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double crel(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), kOracleFloor});
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = (lo * (n - 1 - i) + hi * i) / (n - 1);
  return g;
}

ReadoutConfig readout(ChiSign s, DetectionMode m = DetectionMode::GeneralCase) {
  ReadoutConfig r;
  r.chi_sign = s;
  r.detection_mode = m;
  return r;
}

RunConfig load_recipe(const char* name) {
  return load_config(std::string(RYDHET_RECIPES_DIR) + "/" + name);
}

Outcome ac1_oracle() {
  Outcome o;
  const AtomSystem a = scenario_atom(cesium_atom(), {});
  using Form = std::function<std::complex<double>(const DriveConfig&, double)>;
  struct Case {
    const char* name;
    DetuningAxis axis;
    Form form;
  };
  const Case cases[] = {
      {"local", DetuningAxis::LocalMicrowave,
       [&](const DriveConfig& d, double x) { return rho21_local_detuned(a, d, x); }},
      {"probe", DetuningAxis::ProbeLaser,
       [&](const DriveConfig& d, double x) { return rho21_probe_detuned(a, d, x); }},
      {"coupling", DetuningAxis::CouplingLaser,
       [&](const DriveConfig& d, double x) { return rho21_coupling_detuned(a, d, x); }},
  };
  for (double ol : kLocalRabi) {
    // Resonant: sweep the beat phase with a signal at half the local amplitude.
    const DriveConfig dr = cesium_drive(ol, 0.5 * ol);
    double worst = 0;
    for (double s : grid(0, 2 * std::numbers::pi, kOracleGrid))
      worst = std::max(worst, crel(rho21_resonant(a, dr, s), steady_state(a, dr, s).rho21()));
    o.require(worst <= kOracleTol, fmt("resonant   OL=%g MHz  max rel %.2e", rad_s_to_mhz(ol), worst));
    for (const Case& c : cases) {
      double w = 0, at = 0;
      for (double x : grid(-50_MHz, 50_MHz, kOracleGrid)) {
        const DriveConfig d = scenario_drive(cesium_drive(ol), {c.axis, x});
        const double e = crel(c.form(d, x), steady_state(a, d, 0.0).rho21());
        if (e > w) w = e, at = x;
      }
      o.require(w <= kOracleTol, fmt("%-10s OL=%g MHz  max rel %.2e at %+.1f MHz", c.name,
                                     rad_s_to_mhz(ol), w, rad_s_to_mhz(at)));
    }
  }
  return o;
}

Outcome ac2_optima() {
  Outcome o;
  for (ChiSign s : {ChiSign::Conjugate, ChiSign::Physical}) {
    for (double ol : kLocalRabi) {
      const DriveConfig d = cesium_drive(ol);
      for (Problem p : {Problem::P1, Problem::P2}) {
        const auto r = solve(p, cesium_atom(), d, readout(s));
        const double dev = std::abs(std::abs(r.grid->argmax) - r.optimum);
        o.require(dev <= kOptimumTol,
                  fmt("%s %-9s OL=%g MHz  closed %.6f MHz  grid %.6f MHz  |dev| %.2e MHz",
                      to_string(p), s == ChiSign::Physical ? "physical" : "conjugate",
                      rad_s_to_mhz(ol), rad_s_to_mhz(r.optimum), rad_s_to_mhz(std::abs(r.grid->argmax)),
                      rad_s_to_mhz(dev)));
      }
    }
  }
  const AtomSystem a = scenario_atom(cesium_atom(), {});
  for (double ol : kLocalRabi) {
    const DriveConfig d = cesium_drive(ol);
    const double target = delta_L_star_star(a, d);
    // A 10 nm cell makes C negligible.
    const double len = 1e-8;
    const AtomSystem thin = a.modified([&](AtomParams& p) { p.cell_length = len; });
    const double last = rel_err(delta_L_star(thin, d, len, ChiSign::Physical), target);
    const double at_zero = rel_err(delta_L_star_for_constant(a, d, 0.0), target);
    o.require(last <= kLimitTol && at_zero <= kLimitTol,
              fmt("C->0      OL=%g MHz  rel dev at L=10 nm %.2e, at C=0 %.2e", rad_s_to_mhz(ol), last,
                  at_zero));
  }
  return o;
}

Outcome ac3_gains() {
  Outcome o;
  const Problem problems[] = {Problem::P1, Problem::P2, Problem::P3, Problem::P4};
  const char* labels[] = {"general   ", "high-trans", "probe     ", "coupling  "};
  const double published[4][3] = {
      {0.06, 0.71, 1.85}, {0.09, 0.77, 1.96}, {0.85, 1.27, 2.96}, {1.05, 1.59, 3.41}};
  int misses_conj = 0, misses_phys = 0, misses_20 = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) {
      const DriveConfig d = cesium_drive(kLocalRabi[j]);
      const double g = solve(problems[i], cesium_atom(), d, readout(ChiSign::Conjugate)).gain_db;
      const double gp = solve(problems[i], cesium_atom(), d, readout(ChiSign::Physical)).gain_db;
      const double want = published[i][j];
      misses_conj += std::abs(g - want) > kGainTol;
      misses_phys += std::abs(gp - want) > kGainTol;
      misses_20 += std::abs(2 * g - want) > kGainTol;
      o.require(std::abs(g - want) <= kGainTol,
                fmt("%s OL=%g MHz  %.3f dB (published %.2f)  physical-sign %.3f dB  20log10 %.3f dB",
                    labels[i], rad_s_to_mhz(kLocalRabi[j]), g, want, gp, 2 * g));
    }
  }
  o.note(fmt("pinned: conjugate sign, 10 log10; misses of 12: conjugate %d, physical %d, 20log10 %d",
             misses_conj, misses_phys, misses_20));
  return o;
}

Outcome ac4_regime() {
  Outcome o;
  RunConfig c = load_recipe("regime_validity.json");
  for (double ol : {2.0, 4.0, 6.0}) {
    c.drive.omega_l_mhz = ol;
    const SweepResult r = run_sweep(c);
    double sig = 0, abs0 = 0;
    for (const auto& row : r.rows) {
      sig = std::max(sig, std::abs(row.k_l_chi1_omega_s));
      abs0 = std::max(abs0, std::abs(row.k_l_chi0));
    }
    const double pert = rad_s_to_mhz(1_kHz) / ol;
    o.require(r.error_count == 0 && sig < kSmallParam && abs0 < kSmallParam && pert < kSmallParam,
              fmt("OL=%g MHz  max|kL chi1 Os| %.3e  max|kL chi0| %.3e  Os/OL %.1e  (%zu points)", ol,
                  sig, abs0, pert, r.rows.size()));
  }
  return o;
}

Outcome ac5_transit() {
  Outcome o;
  const auto r = solve(Problem::P5, cesium_atom(), cesium_drive(4_MHz), readout(ChiSign::Conjugate));
  std::string trend;
  for (const auto& p : r.curve) trend += fmt(" %.2f", p.gain_db);
  o.require(r.curve_strictly_decreasing && r.curve.size() == 21,
            fmt("|kappa| strictly decreasing over %zu transit rates", r.curve.size()));
  o.note("gain dB vs gamma = 0:" + trend);
  for (double gt : {0.0, 50_kHz, 200_kHz}) {
    const AtomSystem a = cesium_atom().modified([&](AtomParams& p) { p.gamma_t = gt; });
    try {
      const double t = settling_time(a, cesium_drive(4_MHz), 1e-3);
      o.note(fmt("settling time (1e-3) at gamma_t = 2pi %g kHz: %.3f us", rad_s_to_mhz(gt) * 1e3,
                 t * 1e6));
    } catch (const TimeoutError& e) {
      o.note(fmt("settling time at gamma_t = 2pi %g kHz: %s", rad_s_to_mhz(gt) * 1e3, e.what()));
    }
  }
  return o;
}

Outcome ac6_properties() {
  Outcome o;
  {
    Drawer dr(2024);
    double herm = 0, trace = 0;
    for (int k = 0; k < rydhet::test::kPropertyDraws; ++k) {
      const auto d = dr.next();
      const DensityMatrix rho = steady_state(d.atom, d.drive, d.phase);
      herm = std::max(herm, rho.hermiticity_error());
      trace = std::max(trace, rho.trace_error());
    }
    o.require(herm <= kHermTol && trace <= kTraceTol,
              fmt("invariants on %d draws: hermiticity %.1e  trace %.1e", rydhet::test::kPropertyDraws,
                  herm, trace));
  }
  {
    Drawer dr(77);
    double worst = 0;
    for (int k = 0; k < rydhet::test::kPropertyDraws; ++k) {
      const auto d = dr.next();
      const DriveConfig q = d.drive.modified([&](DriveParams& p) { p.phi_s = d.phase; });
      const double t_end = 40.0 / slowest_relaxation_rate(d.atom, q);
      const DensityMatrix ss = steady_state(d.atom, q, d.phase);
      const DensityMatrix ev = evolve_final(d.atom, q, DensityMatrix::ground_state(), t_end);
      worst = std::max(worst, ev.frobenius_distance(ss));
    }
    o.require(worst <= kEvolveTol, fmt("steady state vs evolution on %d draws: max |diff|_F %.1e",
                                       rydhet::test::kPropertyDraws, worst));
  }
  const AtomSystem a = scenario_atom(cesium_atom(), {});
  {
    Drawer dr(314);
    double worst = 0;
    for (int k = 0; k < 40; ++k) {
      const double ol = mhz_to_rad_s(dr.uniform(1, 8));
      const double x = mhz_to_rad_s(dr.uniform(-50, 50));
      const DriveConfig d = cesium_drive(ol, 100_Hz);
      for (DetuningAxis ax :
           {DetuningAxis::LocalMicrowave, DetuningAxis::ProbeLaser, DetuningAxis::CouplingLaser}) {
        const double closed = chi_decompose_closed_form(a, d, {ax, x}).chi1;
        const double num = chi_decompose_numeric(a, d, {ax, x}).chi1;
        // Near a zero of chi1 the error is taken against the axis scale.
        const double scale = std::abs(chi_decompose_closed_form(a, d, {ax, 0.0}).chi1);
        worst = std::max(worst, std::abs(num - closed) / std::max(std::abs(closed), 1e-3 * scale));
      }
    }
    o.require(worst <= kHarmonicTol,
              fmt("harmonic chi1 at Os = 2pi 100 Hz, 120 points: max rel %.2e", worst));
  }
  {
    double parity = 0, chain = 0;
    for (double ol : kLocalRabi) {
      const DriveConfig d = cesium_drive(ol, 0.05 * ol);
      for (double x : grid(0.5_MHz, 50_MHz, 50)) {
        const auto p = chi_decompose_local(a, d, x), m = chi_decompose_local(a, d, -x);
        parity = std::max({parity, rel_err(p.chi0, m.chi0), rel_err(p.chi1, m.chi1)});
        const auto rp = rho21_local_detuned(a, d, x), rm = rho21_local_detuned(a, d, -x);
        parity = std::max({parity, rel_err(rp.real(), -rm.real()), rel_err(rp.imag(), rm.imag())});
      }
      for (double s : grid(0, 2 * std::numbers::pi, 16)) {
        const auto r0 = rho21_resonant(a, d, s);
        chain = std::max({chain, crel(rho21_local_detuned(a, d, 0.0, s), r0),
                          crel(rho21_probe_detuned(a, d, 0.0, s), r0),
                          crel(rho21_coupling_detuned(a, d, 0.0, s), r0)});
      }
    }
    o.require(parity <= kExactTol && chain <= kExactTol,
              fmt("parity in Delta_L max rel %.1e  reduction chain max rel %.1e", parity, chain));
  }
  return o;
}

Outcome ac7_determinism() {
  Outcome o;
  for (const char* name :
       {"local_detuning_general.json", "probe_detuning.json", "transit_rate.json"}) {
    RunConfig c = load_recipe(name);
    for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json}) {
      c.output.format = f;
      const std::string ref = format_sweep(run_sweep(c, 1));
      bool same = true;
      // Thread count 0 means hardware concurrency.
      for (unsigned t : {1u, 2u, 3u, 8u, 0u}) same = same && format_sweep(run_sweep(c, t)) == ref;
      o.require(same, fmt("%s %s: repeat and threads 2, 3, 8, auto identical (%zu bytes)", name,
                          f == OutputFormat::Csv ? "csv " : "json", ref.size()));
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"AC1", "closed-form rho21 vs numerical steady state", ac1_oracle},
      {"AC2", "optimal local detuning formulas vs grid search", ac2_optima},
      {"AC3", "dB sensitivity gains", ac3_gains},
      {"AC4", "small-parameter regime at Os = 2pi 1 kHz", ac4_regime},
      {"AC5", "transit relaxation degrades the conversion coefficient", ac5_transit},
      {"AC6", "property suites", ac6_properties},
      {"AC7", "sweep determinism across thread counts", ac7_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", c.id, c.title, secs);
    for (const auto& line : o.details) std::printf("%s\n", line.c_str());
    failed += !o.passed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed;
}
