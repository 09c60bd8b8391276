#pragma once

// Physical constants, atom/drive/readout parameter types and the two
// stand-alone formulas (transit relaxation rate, optimal local Rabi frequency).
//
// Unit convention: every Rabi frequency, detuning and relaxation rate is an
// angular frequency in rad/s. The MHz -> rad/s conversion happens once, when a
// RunConfig is resolved; nothing below this header converts units.

#include <numbers>

namespace rydhet {

struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;      // J s
  static constexpr double epsilon0 = 8.8541878128e-12;  // F/m
  static constexpr double kB = 1.380649e-23;            // J/K
};

/// Cyclic frequency in MHz to angular frequency in rad/s.
constexpr double mhz_to_rad_s(double mhz) { return 2.0 * std::numbers::pi * 1e6 * mhz; }
constexpr double rad_s_to_mhz(double w) { return w / (2.0 * std::numbers::pi * 1e6); }

namespace literals {
constexpr double operator""_MHz(long double v) { return mhz_to_rad_s(static_cast<double>(v)); }
constexpr double operator""_MHz(unsigned long long v) { return mhz_to_rad_s(static_cast<double>(v)); }
constexpr double operator""_kHz(long double v) { return mhz_to_rad_s(static_cast<double>(v) * 1e-3); }
constexpr double operator""_kHz(unsigned long long v) { return mhz_to_rad_s(static_cast<double>(v) * 1e-3); }
constexpr double operator""_Hz(long double v) { return mhz_to_rad_s(static_cast<double>(v) * 1e-6); }
constexpr double operator""_Hz(unsigned long long v) { return mhz_to_rad_s(static_cast<double>(v) * 1e-6); }
}  // namespace literals

struct AtomParams {
  double gamma2 = 0;       // decay of |2>, rad/s
  double gamma3 = 0;       // decay of |3>
  double gamma4 = 0;       // decay of |4>
  double gamma_c = 0;      // collision relaxation
  double gamma_t = 0;      // transit relaxation
  double mu12 = 0;         // C m
  double n_eff = 0;        // m^-3
  double lambda_p = 0;     // m
  double cell_length = 0;  // m
  double mass = 0;         // kg
  double temperature = 0;  // K
};

/// Four-level ladder atom plus the vapour cell it sits in. Validated on
/// construction; use modified() to derive variants.
class AtomSystem {
public:
  explicit AtomSystem(const AtomParams& p);

  double gamma2() const { return p_.gamma2; }
  double gamma3() const { return p_.gamma3; }
  double gamma4() const { return p_.gamma4; }
  double gamma_c() const { return p_.gamma_c; }
  double gamma_t() const { return p_.gamma_t; }
  double mu12() const { return p_.mu12; }
  double n_eff() const { return p_.n_eff; }
  double lambda_p() const { return p_.lambda_p; }
  double cell_length() const { return p_.cell_length; }
  double mass() const { return p_.mass; }
  double temperature() const { return p_.temperature; }

  /// Probe wavevector 2 pi / lambda_p.
  double wavevector() const { return 2.0 * std::numbers::pi / p_.lambda_p; }
  /// 2 N mu^2 / (hbar eps0), rad/s. Im chi = -(this / Omega_p) Im rho21.
  double chi_prefactor() const;

  const AtomParams& params() const { return p_; }

  template <class F>
  AtomSystem modified(F&& f) const {
    AtomParams q = p_;
    f(q);
    return AtomSystem(q);
  }

private:
  AtomParams p_;
};

struct DriveParams {
  double omega_p = 0;     // rad/s
  double omega_c = 0;
  double omega_L = 0;
  double omega_s = 0;
  double delta_p = 0;     // signed, rad/s
  double delta_c = 0;
  double delta_L = 0;
  double delta_beat = 0;  // Hz (cyclic)
  double phi_s = 0;       // rad
};

class DriveConfig {
public:
  explicit DriveConfig(const DriveParams& p);

  double omega_p() const { return p_.omega_p; }
  double omega_c() const { return p_.omega_c; }
  double omega_L() const { return p_.omega_L; }
  double omega_s() const { return p_.omega_s; }
  double delta_p() const { return p_.delta_p; }
  double delta_c() const { return p_.delta_c; }
  double delta_L() const { return p_.delta_L; }
  double delta_beat() const { return p_.delta_beat; }
  double phi_s() const { return p_.phi_s; }

  /// Signal is treated to first order only when omega_s < omega_L / 10.
  bool perturbative() const { return p_.omega_s < 0.1 * p_.omega_L; }

  /// Beat phase S(t) = 2 pi delta_beat t + phi_s.
  double phase_at(double t) const {
    return 2.0 * std::numbers::pi * p_.delta_beat * t + p_.phi_s;
  }

  /// |Omega_L + Omega_s e^{-i phase}|.
  double effective_local_rabi(double phase) const;

  const DriveParams& params() const { return p_; }

  template <class F>
  DriveConfig modified(F&& f) const {
    DriveParams q = p_;
    f(q);
    return DriveConfig(q);
  }

private:
  DriveParams p_;
};

enum class DetectionMode { GeneralCase, HighTransmittance };

/// Sign of Im chi used in the transmission exponent.
///  Physical:  chi from rho21, Im chi >= 0 is absorption, P = P_i e^{-kL chi0 ...}.
///  Conjugate: chi evaluated from rho12 = conj(rho21), which flips the sign of
///             Im chi (and therefore of chi0, chi1). This is the convention the
///             published sensitivity-gain tables were computed in.
enum class ChiSign { Physical, Conjugate };

struct ReadoutConfig {
  double input_power = 1.0;  // W
  DetectionMode detection_mode = DetectionMode::GeneralCase;
  ChiSign chi_sign = ChiSign::Physical;

  void validate() const;
};

/// Transit-time relaxation rate for atoms of the given mass crossing a
/// Gaussian beam of 1/e^2 waist `beam_waist` at temperature `temperature`:
///   gamma = sqrt(8 kB T / (pi m)) / (w sqrt(2 ln 2)).
double transit_rate(double beam_waist, double mass, double temperature);

/// Local-oscillator Rabi frequency maximizing the resonant heterodyne slope.
double optimal_local_rabi(double omega_p, double omega_c, double gamma2);

namespace cesium {
inline constexpr double mass = 2.2069e-25;              // kg (133 u)
inline constexpr double d2_dipole = 3.7971e-29 / std::numbers::sqrt2;  // C m, stretched cycling transition
inline constexpr double d2_wavelength = 852.35e-9;      // m
}  // namespace cesium

/// Cs 6S1/2 -> 6P3/2 -> 47D5/2 -> 48P3/2 parameter set used throughout the
/// numerical results (gamma_c = gamma_t = 0, N_eff = 1e8 cm^-3, L = 1 cm).
AtomSystem cesium_atom();
/// Omega_p = 2pi 5.7 MHz, Omega_c = 2pi 0.97 MHz, all detunings zero.
DriveConfig cesium_drive(double omega_L, double omega_s = 0.0);

}  // namespace rydhet
