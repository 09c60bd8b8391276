#include "rydhet/readout.hpp"

#include <cmath>

#include "rydhet/errors.hpp"

namespace rydhet {
namespace {

double optical_depth(double x) {
  if (!(std::abs(x) <= kMaxOpticalDepth))
    throw RangeError("optical exponent " + std::to_string(x) + " out of range");
  return x;
}

}  // namespace

double chi_sign_factor(ChiSign s) { return s == ChiSign::Physical ? 1.0 : -1.0; }

double transmitted_power(const SusceptibilityDecomposition& decomp, const AtomSystem& atom,
                         const ReadoutConfig& readout, double omega_s, double phase) {
  const double kl = atom.wavevector() * atom.cell_length();
  const double x = chi_sign_factor(readout.chi_sign) * kl * decomp.im_chi(omega_s, phase);
  return readout.input_power * std::exp(-optical_depth(x));
}

double dc_power(const SusceptibilityDecomposition& decomp, const AtomSystem& atom,
                const ReadoutConfig& readout) {
  const double kl = atom.wavevector() * atom.cell_length();
  return readout.input_power *
         std::exp(-optical_depth(chi_sign_factor(readout.chi_sign) * kl * decomp.chi0));
}

double conversion_general(const SusceptibilityDecomposition& decomp, const AtomSystem& atom,
                          const ReadoutConfig& readout) {
  const double kl = atom.wavevector() * atom.cell_length();
  return -chi_sign_factor(readout.chi_sign) * dc_power(decomp, atom, readout) * kl * decomp.chi1;
}

double conversion_high_transmittance(const SusceptibilityDecomposition& decomp,
                                     const AtomSystem& atom, const ReadoutConfig& readout) {
  const double kl = atom.wavevector() * atom.cell_length();
  return -chi_sign_factor(readout.chi_sign) * readout.input_power * kl * decomp.chi1;
}

double conversion(const SusceptibilityDecomposition& decomp, const AtomSystem& atom,
                  const ReadoutConfig& readout) {
  return readout.detection_mode == DetectionMode::GeneralCase
             ? conversion_general(decomp, atom, readout)
             : conversion_high_transmittance(decomp, atom, readout);
}

double peak_to_peak(const SusceptibilityDecomposition& decomp, const AtomSystem& atom,
                    const ReadoutConfig& readout, double omega_s) {
  const double kl = atom.wavevector() * atom.cell_length();
  const double x = optical_depth(kl * std::abs(decomp.chi1) * omega_s);
  return 2.0 * dc_power(decomp, atom, readout) * std::sinh(x);
}

ReadoutResult evaluate_readout(const SusceptibilityDecomposition& decomp,
                               const AtomSystem& atom, const ReadoutConfig& readout,
                               double omega_s) {
  readout.validate();
  const double kl = atom.wavevector() * atom.cell_length();
  ReadoutResult r;
  r.p_dc = dc_power(decomp, atom, readout);
  r.kappa = conversion_general(decomp, atom, readout);
  r.kappa_prime = conversion_high_transmittance(decomp, atom, readout);
  r.p_pp = peak_to_peak(decomp, atom, readout, omega_s);
  if (std::abs(kl * decomp.chi1 * omega_s) >= kSmallParameter)
    r.warnings.emplace_back("|kL chi1 Omega_s| is not small: linear readout is inaccurate");
  if (readout.detection_mode == DetectionMode::HighTransmittance &&
      std::abs(kl * decomp.chi0) >= kSmallParameter)
    r.warnings.emplace_back("|kL chi0| is not small: high-transmittance case is inaccurate");
  return r;
}

double gain_db(double kappa_at, double kappa_ref, double scale) {
  if (kappa_ref == 0.0 || !std::isfinite(kappa_ref))
    throw DomainError("kappa_ref", "reference conversion coefficient must be finite and nonzero");
  return scale * std::log10(std::abs(kappa_at) / std::abs(kappa_ref));
}

}  // namespace rydhet
