#include "rydhet/model.hpp"

#include <cmath>
#include <complex>

#include "rydhet/errors.hpp"

namespace rydhet {
namespace {

void require_finite(const char* field, double v) {
  if (!std::isfinite(v)) throw DomainError(field, "must be finite");
}

void require_nonnegative(const char* field, double v) {
  require_finite(field, v);
  if (v < 0) throw DomainError(field, "must be >= 0");
}

void require_positive(const char* field, double v) {
  require_finite(field, v);
  if (!(v > 0)) throw DomainError(field, "must be > 0");
}

}  // namespace

AtomSystem::AtomSystem(const AtomParams& p) : p_(p) {
  require_nonnegative("gamma2", p.gamma2);
  require_nonnegative("gamma3", p.gamma3);
  require_nonnegative("gamma4", p.gamma4);
  require_nonnegative("gamma_c", p.gamma_c);
  require_nonnegative("gamma_t", p.gamma_t);
  require_positive("mu12", p.mu12);
  require_positive("n_eff", p.n_eff);
  require_positive("lambda_p", p.lambda_p);
  require_positive("cell_length", p.cell_length);
  require_positive("mass", p.mass);
  require_positive("temperature", p.temperature);
}

double AtomSystem::chi_prefactor() const {
  return 2.0 * p_.n_eff * p_.mu12 * p_.mu12 /
         (PhysicalConstants::hbar * PhysicalConstants::epsilon0);
}

DriveConfig::DriveConfig(const DriveParams& p) : p_(p) {
  require_positive("omega_p", p.omega_p);
  require_positive("omega_c", p.omega_c);
  require_positive("omega_L", p.omega_L);
  require_nonnegative("omega_s", p.omega_s);
  require_finite("delta_p", p.delta_p);
  require_finite("delta_c", p.delta_c);
  require_finite("delta_L", p.delta_L);
  require_finite("delta_beat", p.delta_beat);
  require_finite("phi_s", p.phi_s);
}

double DriveConfig::effective_local_rabi(double phase) const {
  return std::abs(p_.omega_L + p_.omega_s * std::polar(1.0, -phase));
}

void ReadoutConfig::validate() const {
  require_positive("input_power", input_power);
}

double transit_rate(double beam_waist, double mass, double temperature) {
  require_positive("beam_waist", beam_waist);
  require_positive("mass", mass);
  require_positive("temperature", temperature);
  const double mean_speed =
      std::sqrt(8.0 * PhysicalConstants::kB * temperature / (std::numbers::pi * mass));
  return mean_speed / (beam_waist * std::sqrt(2.0 * std::numbers::ln2));
}

double optimal_local_rabi(double omega_p, double omega_c, double gamma2) {
  require_positive("omega_p", omega_p);
  require_positive("omega_c", omega_c);
  require_positive("gamma2", gamma2);
  const double p2 = omega_p * omega_p;
  const double c2 = omega_c * omega_c;
  return omega_p * std::sqrt(2.0 * (c2 + p2) / (3.0 * (2.0 * p2 + gamma2 * gamma2)));
}

AtomSystem cesium_atom() {
  AtomParams p;
  p.gamma2 = mhz_to_rad_s(5.2);
  p.gamma3 = mhz_to_rad_s(3.9e-3);
  p.gamma4 = mhz_to_rad_s(1.7e-3);
  p.mu12 = cesium::d2_dipole;
  p.n_eff = 1e14;  // 1e8 cm^-3
  p.lambda_p = cesium::d2_wavelength;
  p.cell_length = 0.01;
  p.mass = cesium::mass;
  p.temperature = 300.0;
  return AtomSystem(p);
}

DriveConfig cesium_drive(double omega_L, double omega_s) {
  DriveParams p;
  p.omega_p = mhz_to_rad_s(5.7);
  p.omega_c = mhz_to_rad_s(0.97);
  p.omega_L = omega_L;
  p.omega_s = omega_s;
  return DriveConfig(p);
}

}  // namespace rydhet
