#pragma once

// Closed-form steady-state coherences and susceptibility decompositions
//   Im chi(t) = chi0 + chi1 * Omega_s * cos S(t)
// for the resonant case and for one detuned axis at a time, plus a numerical
// harmonic extraction that works for any configuration (including transit
// relaxation, where no closed form exists).
//
// Sign conventions follow the master equation in liouvillian.hpp: rho21 has a
// negative imaginary part on resonance and Im chi = -(2 N mu^2 / hbar eps0 Omega_p) Im rho21
// is non-negative (absorption).

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "rydhet/model.hpp"

namespace rydhet {

struct SusceptibilityDecomposition {
  double chi0 = 0;  // dimensionless
  double chi1 = 0;  // s/rad: chi1 * Omega_s is dimensionless
  std::vector<std::string> warnings;

  /// Im chi at beat phase S, first order in Omega_s.
  double im_chi(double omega_s, double phase) const;
};

enum class DetuningAxis { LocalMicrowave, ProbeLaser, CouplingLaser, TransitRate };

struct DetuningScenario {
  DetuningAxis axis = DetuningAxis::LocalMicrowave;
  double value = 0;  // rad/s (detuning, or gamma_t for TransitRate)
};

const char* to_string(DetuningAxis axis);

/// Puts the scenario value on its axis and zeroes the other detunings.
DriveConfig scenario_drive(const DriveConfig& drive, const DetuningScenario& s);
/// Scenario assumption set for the relaxation rates: gamma3 = gamma4 =
/// gamma_c = 0, and gamma_t = 0 unless the axis is TransitRate (then gamma_t =
/// value).
AtomSystem scenario_atom(const AtomSystem& atom, const DetuningScenario& s);

// --- closed forms -----------------------------------------------------------
// `phase` defaults to drive.phi_s(); Omega = |Omega_L + Omega_s e^{-i phase}|.
// Each throws ContractError when the configuration violates its assumptions.

/// All detunings zero, gamma3 = gamma4 = gamma_c = gamma_t = 0.
std::complex<double> rho21_resonant(const AtomSystem& atom, const DriveConfig& drive,
                                    std::optional<double> phase = std::nullopt);

/// Delta_c = Delta_p = 0, gamma3 = gamma4 = 0 (and gamma_t = gamma_c = 0).
std::complex<double> rho21_local_detuned(const AtomSystem& atom, const DriveConfig& drive,
                                         double delta_L,
                                         std::optional<double> phase = std::nullopt);

/// Delta_c = Delta_L = 0, gamma3 = gamma4 = gamma_c = gamma_t = 0.
std::complex<double> rho21_probe_detuned(const AtomSystem& atom, const DriveConfig& drive,
                                         double delta_p,
                                         std::optional<double> phase = std::nullopt);

/// Delta_p = Delta_L = 0, gamma3 = gamma4 = gamma_c = gamma_t = 0.
std::complex<double> rho21_coupling_detuned(const AtomSystem& atom, const DriveConfig& drive,
                                            double delta_c,
                                            std::optional<double> phase = std::nullopt);

/// Im chi from rho21: -(2 N mu^2 / hbar eps0 Omega_p) Im rho21.
double im_chi_from_rho21(const AtomSystem& atom, const DriveConfig& drive,
                         std::complex<double> rho21);

SusceptibilityDecomposition chi_decompose_local(const AtomSystem& atom, const DriveConfig& drive,
                                                double delta_L);
SusceptibilityDecomposition chi_decompose_probe(const AtomSystem& atom, const DriveConfig& drive,
                                                double delta_p);
SusceptibilityDecomposition chi_decompose_coupling(const AtomSystem& atom,
                                                   const DriveConfig& drive, double delta_c);

/// Dispatches to the closed form for the three detuning axes (after applying
/// scenario_atom/scenario_drive). Throws ContractError for TransitRate.
SusceptibilityDecomposition chi_decompose_closed_form(const AtomSystem& atom,
                                                      const DriveConfig& drive,
                                                      const DetuningScenario& s);

inline constexpr int kDefaultPhaseSamples = 64;

/// Samples the steady state at n_phase equally spaced beat phases and returns
/// the DC and first cosine harmonic of Im chi (the latter divided by Omega_s).
/// Applies scenario_drive and sets gamma_t for the TransitRate axis; other
/// relaxation rates are used as given.
SusceptibilityDecomposition chi_decompose_numeric(const AtomSystem& atom,
                                                  const DriveConfig& drive,
                                                  const DetuningScenario& s,
                                                  int n_phase = kDefaultPhaseSamples);

}  // namespace rydhet
