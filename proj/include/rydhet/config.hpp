#pragma once

// Run configuration as written by the user. Frequencies carry an `_mhz` (or
// `_hz`) suffix and are stored verbatim; resolve() is the only place they are
// turned into rad/s.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rydhet/model.hpp"
#include "rydhet/optimize.hpp"
#include "rydhet/susceptibility.hpp"

namespace rydhet {

struct AtomSection {
  double gamma2_mhz = 5.2;
  double gamma3_mhz = 3.9e-3;
  double gamma4_mhz = 1.7e-3;
  double gamma_c_mhz = 0;
  double gamma_t_mhz = 0;
  double mu12_cm = cesium::d2_dipole;
  double n_eff_per_cm3 = 1e8;
  double lambda_p_nm = 852.35;
  double cell_length_cm = 1.0;
  double mass_kg = cesium::mass;
  double temperature_k = 300.0;
  bool operator==(const AtomSection&) const = default;
};

struct DriveSection {
  double omega_p_mhz = 5.7;
  double omega_c_mhz = 0.97;
  double omega_l_mhz = 4.0;
  double omega_s_mhz = 0;
  double delta_p_mhz = 0;
  double delta_c_mhz = 0;
  double delta_l_mhz = 0;
  double beat_hz = 0;
  double phi_s_rad = 0;
  bool operator==(const DriveSection&) const = default;
};

struct ReadoutSection {
  double input_power_w = 1.0;
  DetectionMode mode = DetectionMode::GeneralCase;
  ChiSign chi_sign = ChiSign::Physical;
  bool operator==(const ReadoutSection&) const = default;
};

enum class SweepMethod { Auto, ClosedForm, Numeric };

struct SweepSection {
  DetuningAxis axis = DetuningAxis::LocalMicrowave;
  double lo_mhz = -50;
  double hi_mhz = 50;
  int n = 101;
  /// Auto: closed form on detuning axes, numeric extraction for gamma_t.
  SweepMethod method = SweepMethod::Auto;
  /// Signal amplitude used for numeric extraction when drive.omega_s_mhz = 0.
  double extraction_omega_s_mhz = 1e-4;
  int phase_samples = kDefaultPhaseSamples;
  bool operator==(const SweepSection&) const = default;
};

struct OptimizeSection {
  double window_lo_mhz = -50;
  double window_hi_mhz = 50;
  int coarse_n = 2001;
  int refine_iters = 60;
  double crosscheck_rel_tol = 1e-6;
  std::vector<double> gamma_values_mhz = default_gamma_values_mhz();
  double extraction_omega_s_mhz = 1e-4;
  bool operator==(const OptimizeSection&) const = default;

  static std::vector<double> default_gamma_values_mhz();
};

enum class OutputFormat { Csv, Json };

struct OutputSection {
  OutputFormat format = OutputFormat::Csv;
  std::string path;  // empty: stdout
  bool operator==(const OutputSection&) const = default;
};

struct RunConfig {
  AtomSection atom;
  DriveSection drive;
  ReadoutSection readout;
  SweepSection sweep;
  OptimizeSection optimize;
  OutputSection output;
  bool operator==(const RunConfig&) const = default;
};

/// Parses a JSON document. Missing fields take the defaults above; unknown
/// fields, wrong types and unknown enum names throw ConfigError naming the
/// JSON path (e.g. "drive.omega_p_mhz").
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);  // IoError if unreadable

/// Fully defaulted document; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c, int indent = 2);

/// 64-bit FNV-1a of the compact serialized form, as 16 hex digits.
std::string config_hash(const RunConfig& c);

struct ResolvedConfig {
  AtomSystem atom;
  DriveConfig drive;
  ReadoutConfig readout;
  OptimizeOptions optimize;
};

/// Unit conversion and physical validation. Domain violations are reported as
/// ConfigError on the corresponding JSON path.
ResolvedConfig resolve(const RunConfig& c);

const char* to_string(SweepMethod m);
const char* to_string(OutputFormat f);
const char* to_string(DetectionMode m);
const char* to_string(ChiSign s);

}  // namespace rydhet
