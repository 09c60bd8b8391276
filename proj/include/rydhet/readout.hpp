#pragma once

// Probe transmission through a cell of length L:
//   P(t) = P_i exp(-kL (chi0 + chi1 Omega_s cos S(t)))
// and the small-signal conversion coefficients derived from it.

#include <string>
#include <vector>

#include "rydhet/model.hpp"
#include "rydhet/susceptibility.hpp"

namespace rydhet {

struct ReadoutResult {
  double p_dc = 0;         // W
  double kappa = 0;        // W s: kappa * Omega_s is the signal amplitude in watts
  double kappa_prime = 0;  // W s, thin-medium variant
  double p_pp = 0;         // W
  std::vector<std::string> warnings;
};

/// Exponents beyond this magnitude are rejected as nonphysical.
inline constexpr double kMaxOpticalDepth = 700.0;
/// Threshold for "much less than one" in the small-parameter checks.
inline constexpr double kSmallParameter = 0.1;

/// +1 for ChiSign::Physical, -1 for ChiSign::Conjugate.
double chi_sign_factor(ChiSign s);

double transmitted_power(const SusceptibilityDecomposition& decomp, const AtomSystem& atom,
                         const ReadoutConfig& readout, double omega_s, double phase);

/// DC output power P_i exp(-kL chi0).
double dc_power(const SusceptibilityDecomposition& decomp, const AtomSystem& atom,
                const ReadoutConfig& readout);

/// kappa = -P_i e^{-kL chi0} kL chi1.
double conversion_general(const SusceptibilityDecomposition& decomp, const AtomSystem& atom,
                          const ReadoutConfig& readout);

/// kappa' = -P_i kL chi1.
double conversion_high_transmittance(const SusceptibilityDecomposition& decomp,
                                     const AtomSystem& atom, const ReadoutConfig& readout);

/// Coefficient selected by readout.detection_mode.
double conversion(const SusceptibilityDecomposition& decomp, const AtomSystem& atom,
                  const ReadoutConfig& readout);

/// Exact peak-to-peak swing 2 P_i e^{-kL chi0} sinh(kL |chi1| Omega_s).
double peak_to_peak(const SusceptibilityDecomposition& decomp, const AtomSystem& atom,
                    const ReadoutConfig& readout, double omega_s);

/// All observables plus small-parameter warnings (|kL chi1 Omega_s| and, in
/// the high-transmittance mode, |kL chi0| against kSmallParameter).
ReadoutResult evaluate_readout(const SusceptibilityDecomposition& decomp,
                               const AtomSystem& atom, const ReadoutConfig& readout,
                               double omega_s);

/// dB scale applied to |kappa| ratios: 10 log10 reproduces the published
/// sensitivity-gain tables, see README.
inline constexpr double kGainDbScale = 10.0;

/// scale * log10(|kappa_at| / |kappa_ref|). Throws DomainError on a zero
/// reference.
double gain_db(double kappa_at, double kappa_ref, double scale = kGainDbScale);

}  // namespace rydhet
