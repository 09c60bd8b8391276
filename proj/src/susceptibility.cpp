#include "rydhet/susceptibility.hpp"

#include <cmath>
#include <numbers>

#include "rydhet/errors.hpp"
#include "rydhet/liouvillian.hpp"

namespace rydhet {
namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

double sq(double x) { return x * x; }

void require_zero(const char* what, const char* name, double v) {
  if (v != 0.0)
    throw ContractError(std::string(what) + ": requires " + name + " = 0 (got " +
                        std::to_string(v) + ")");
}

double omega_at(const DriveConfig& d, std::optional<double> phase) {
  return d.effective_local_rabi(phase.value_or(d.phi_s()));
}

void check_local(const char* what, const AtomSystem& a, const DriveConfig& d) {
  require_zero(what, "delta_p", d.delta_p());
  require_zero(what, "delta_c", d.delta_c());
  require_zero(what, "gamma3", a.gamma3());
  require_zero(what, "gamma4", a.gamma4());
  require_zero(what, "gamma_c", a.gamma_c());
  require_zero(what, "gamma_t", a.gamma_t());
}

void check_laser(const char* what, const AtomSystem& a, const DriveConfig& d,
                 const char* other_name, double other) {
  require_zero(what, other_name, other);
  require_zero(what, "delta_L", d.delta_L());
  require_zero(what, "gamma3", a.gamma3());
  require_zero(what, "gamma4", a.gamma4());
  require_zero(what, "gamma_c", a.gamma_c());
  require_zero(what, "gamma_t", a.gamma_t());
}

// Denominators. S = Omega_p^2 + Omega_c^2 throughout.

double denom_local(double g2, double op, double oc, double om, double dl) {
  const double s = sq(op) + sq(oc);
  return sq(g2) * std::pow(om, 4) + 4 * sq(dl) * sq(s) + 2 * sq(om) * sq(op) * (s + sq(om));
}

double denom_probe(double g2, double op, double oc, double om, double dp) {
  const double d2 = sq(dp), o2 = sq(om), p2 = sq(op), c2 = sq(oc);
  return 64 * d2 * d2 * d2 + sq(g2) * sq(o2 - 4 * d2) +
         4 * d2 * (sq(o2 + c2) + 2 * p2 * (p2 + c2 - 2 * o2)) -
         32 * d2 * d2 * (o2 + c2 - p2) + 2 * p2 * o2 * (p2 + c2 + o2);
}

double denom_coupling(double g2, double op, double oc, double om, double dc) {
  const double d2 = sq(dc), o2 = sq(om), p2 = sq(op), c2 = sq(oc);
  return 32 * d2 * d2 * p2 + sq(g2) * sq(o2 - 4 * d2) + 2 * p2 * o2 * (p2 + c2 + o2) +
         4 * d2 * (sq(p2 + c2) + p2 * (p2 - 4 * o2));
}

void flag_nonperturbative(const DriveConfig& d, SusceptibilityDecomposition& out) {
  if (!d.perturbative())
    out.warnings.emplace_back("omega_s >= omega_L/10: first-order decomposition is unreliable");
}

}  // namespace

double SusceptibilityDecomposition::im_chi(double omega_s, double phase) const {
  return chi0 + chi1 * omega_s * std::cos(phase);
}

const char* to_string(DetuningAxis axis) {
  switch (axis) {
    case DetuningAxis::LocalMicrowave: return "delta_l";
    case DetuningAxis::ProbeLaser: return "delta_p";
    case DetuningAxis::CouplingLaser: return "delta_c";
    case DetuningAxis::TransitRate: return "gamma_t";
  }
  return "?";
}

DriveConfig scenario_drive(const DriveConfig& drive, const DetuningScenario& s) {
  return drive.modified([&](DriveParams& p) {
    p.delta_p = s.axis == DetuningAxis::ProbeLaser ? s.value : 0.0;
    p.delta_c = s.axis == DetuningAxis::CouplingLaser ? s.value : 0.0;
    p.delta_L = s.axis == DetuningAxis::LocalMicrowave ? s.value : 0.0;
  });
}

AtomSystem scenario_atom(const AtomSystem& atom, const DetuningScenario& s) {
  return atom.modified([&](AtomParams& p) {
    p.gamma3 = p.gamma4 = p.gamma_c = 0.0;
    p.gamma_t = s.axis == DetuningAxis::TransitRate ? s.value : 0.0;
  });
}

cplx rho21_resonant(const AtomSystem& atom, const DriveConfig& d, std::optional<double> phase) {
  constexpr const char* what = "rho21_resonant";
  require_zero(what, "delta_p", d.delta_p());
  require_zero(what, "delta_c", d.delta_c());
  require_zero(what, "delta_L", d.delta_L());
  require_zero(what, "gamma_t", atom.gamma_t());
  require_zero(what, "gamma_c", atom.gamma_c());
  require_zero(what, "gamma3", atom.gamma3());
  require_zero(what, "gamma4", atom.gamma4());
  const double g2 = atom.gamma2(), op = d.omega_p(), oc = d.omega_c();
  const double o2 = sq(omega_at(d, phase));
  const double den = sq(g2) * o2 + 2 * sq(oc) * sq(op) + 2 * std::pow(op, 4) + 2 * sq(op) * o2;
  return -kI * g2 * op * o2 / den;
}

cplx rho21_local_detuned(const AtomSystem& atom, const DriveConfig& d, double delta_L,
                         std::optional<double> phase) {
  check_local("rho21_local_detuned", atom, d);
  const double g2 = atom.gamma2(), op = d.omega_p(), oc = d.omega_c();
  const double om = omega_at(d, phase), o2 = sq(om);
  const cplx num = kI * g2 * op * o2 * o2 + 2 * delta_L * op * o2 * sq(oc);
  return -num / denom_local(g2, op, oc, om, delta_L);
}

cplx rho21_probe_detuned(const AtomSystem& atom, const DriveConfig& d, double delta_p,
                         std::optional<double> phase) {
  check_laser("rho21_probe_detuned", atom, d, "delta_c", d.delta_c());
  const double g2 = atom.gamma2(), op = d.omega_p(), oc = d.omega_c();
  const double om = omega_at(d, phase), o2 = sq(om);
  const double root = 4 * sq(delta_p) - o2;
  const cplx inner = kI * g2 * root + 2 * delta_p * (4 * sq(delta_p) - sq(oc) - o2);
  return -op * root * inner / denom_probe(g2, op, oc, om, delta_p);
}

cplx rho21_coupling_detuned(const AtomSystem& atom, const DriveConfig& d, double delta_c,
                            std::optional<double> phase) {
  check_laser("rho21_coupling_detuned", atom, d, "delta_p", d.delta_p());
  const double g2 = atom.gamma2(), op = d.omega_p(), oc = d.omega_c();
  const double om = omega_at(d, phase), o2 = sq(om);
  const double root = 4 * sq(delta_c) - o2;
  const cplx num = kI * g2 * op * sq(root) - 2 * op * sq(oc) * delta_c * root;
  return -num / denom_coupling(g2, op, oc, om, delta_c);
}

double im_chi_from_rho21(const AtomSystem& atom, const DriveConfig& drive, cplx rho21) {
  return -atom.chi_prefactor() / drive.omega_p() * rho21.imag();
}

SusceptibilityDecomposition chi_decompose_local(const AtomSystem& atom, const DriveConfig& d,
                                                double delta_L) {
  check_local("chi_decompose_local", atom, d);
  const double g2 = atom.gamma2(), op = d.omega_p(), oc = d.omega_c(), ol = d.omega_L();
  const double s = sq(op) + sq(oc);
  const double den = denom_local(g2, op, oc, ol, delta_L);
  const double pref = atom.chi_prefactor();
  SusceptibilityDecomposition out;
  out.chi0 = pref * g2 * std::pow(ol, 4) / den;
  out.chi1 = pref * 4 * g2 * std::pow(ol, 3) * s * (sq(ol) * sq(op) + 4 * sq(delta_L) * s) /
             sq(den);
  flag_nonperturbative(d, out);
  return out;
}

SusceptibilityDecomposition chi_decompose_probe(const AtomSystem& atom, const DriveConfig& d,
                                                double delta_p) {
  check_laser("chi_decompose_probe", atom, d, "delta_c", d.delta_c());
  const double g2 = atom.gamma2(), op = d.omega_p(), oc = d.omega_c(), ol = d.omega_L();
  const double s = sq(op) + sq(oc), d2 = sq(delta_p), l2 = sq(ol), c2 = sq(oc);
  const double root = 4 * d2 - l2;
  const double den = denom_probe(g2, op, oc, ol, delta_p);
  // d/dOmega of the probe absorption numerator-over-D_p at Omega = Omega_L,
  // written as -4 g2 Op Omega_L A_p / D_p^2.
  const double a_p =
      root * (l2 * sq(op) * s - 16 * d2 * d2 * c2 + 4 * d2 * (c2 * (c2 + l2) + 3 * sq(op) * s));
  const double pref = atom.chi_prefactor();
  SusceptibilityDecomposition out;
  out.chi0 = pref * g2 * sq(root) / den;
  out.chi1 = -pref * 4 * g2 * ol * a_p / sq(den);
  flag_nonperturbative(d, out);
  return out;
}

SusceptibilityDecomposition chi_decompose_coupling(const AtomSystem& atom, const DriveConfig& d,
                                                   double delta_c) {
  check_laser("chi_decompose_coupling", atom, d, "delta_p", d.delta_p());
  const double g2 = atom.gamma2(), op = d.omega_p(), oc = d.omega_c(), ol = d.omega_L();
  const double s = sq(op) + sq(oc), d2 = sq(delta_c), l2 = sq(ol), c2 = sq(oc), p2 = sq(op);
  const double root = 4 * d2 - l2;
  const double den = denom_coupling(g2, op, oc, ol, delta_c);
  const double a_c = root * (l2 * p2 * s + 4 * d2 * (c2 * c2 + 3 * c2 * p2 + 3 * p2 * p2));
  const double pref = atom.chi_prefactor();
  SusceptibilityDecomposition out;
  out.chi0 = pref * g2 * sq(root) / den;
  out.chi1 = -pref * 4 * g2 * ol * a_c / sq(den);
  flag_nonperturbative(d, out);
  return out;
}

SusceptibilityDecomposition chi_decompose_closed_form(const AtomSystem& atom,
                                                      const DriveConfig& drive,
                                                      const DetuningScenario& s) {
  const AtomSystem a = scenario_atom(atom, s);
  const DriveConfig d = scenario_drive(drive, s);
  switch (s.axis) {
    case DetuningAxis::LocalMicrowave: return chi_decompose_local(a, d, s.value);
    case DetuningAxis::ProbeLaser: return chi_decompose_probe(a, d, s.value);
    case DetuningAxis::CouplingLaser: return chi_decompose_coupling(a, d, s.value);
    case DetuningAxis::TransitRate: break;
  }
  throw ContractError("no closed-form decomposition with transit relaxation");
}

SusceptibilityDecomposition chi_decompose_numeric(const AtomSystem& atom,
                                                  const DriveConfig& drive,
                                                  const DetuningScenario& s, int n_phase) {
  if (n_phase < 4) throw DomainError("n_phase", "need at least 4 phase samples");
  const DriveConfig d = scenario_drive(drive, s);
  const AtomSystem a = s.axis == DetuningAxis::TransitRate
                           ? atom.modified([&](AtomParams& p) { p.gamma_t = s.value; })
                           : atom;

  SusceptibilityDecomposition out;
  if (d.omega_s() == 0.0) {
    out.chi0 = im_chi_from_rho21(a, d, steady_state(a, d, 0.0).rho21());
    out.chi1 = 0.0;
    return out;
  }

  double dc = 0, c1 = 0, c2 = 0, s2 = 0;
  for (int k = 0; k < n_phase; ++k) {
    const double phase = 2.0 * std::numbers::pi * k / n_phase;
    const double im = im_chi_from_rho21(a, d, steady_state(a, d, phase).rho21());
    dc += im;
    c1 += im * std::cos(phase);
    c2 += im * std::cos(2 * phase);
    s2 += im * std::sin(2 * phase);
  }
  dc /= n_phase;
  c1 *= 2.0 / n_phase;
  c2 *= 2.0 / n_phase;
  s2 *= 2.0 / n_phase;
  out.chi0 = dc;
  out.chi1 = c1 / d.omega_s();
  if (std::hypot(c2, s2) > 0.1 * std::abs(c1))
    out.warnings.emplace_back("second-harmonic content exceeds 10% of the first harmonic");
  flag_nonperturbative(d, out);
  return out;
}

}  // namespace rydhet
