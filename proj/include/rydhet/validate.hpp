#pragma once

// Closed form vs numerical oracle checks, run by `rydhet validate`.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rydhet/config.hpp"
#include "rydhet/susceptibility.hpp"

namespace rydhet {

/// The closed forms under test. Replaceable so the suite itself can be
/// tested against deliberately broken expressions.
struct ClosedFormSet {
  using Detuned = std::function<std::complex<double>(const AtomSystem&, const DriveConfig&,
                                                     double, std::optional<double>)>;
  std::function<std::complex<double>(const AtomSystem&, const DriveConfig&,
                                     std::optional<double>)>
      resonant = rho21_resonant;
  Detuned local_detuned = rho21_local_detuned;
  Detuned probe_detuned = rho21_probe_detuned;
  Detuned coupling_detuned = rho21_coupling_detuned;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double max_deviation = 0;  // relative, as defined per check
  double tolerance = 0;
  std::string location;  // where the maximum deviation occurred
  std::string error;     // exception text if the check could not run
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
  /// One "PASS"/"FAIL" line per check plus a summary line.
  std::string text() const;
};

inline constexpr int kValidationGridPoints = 101;
inline constexpr double kOracleRelTol = 1e-9;
inline constexpr double kReductionRelTol = 1e-12;
inline constexpr double kFiniteDifferenceRelTol = 1e-6;
inline constexpr double kHarmonicRelTol = 5e-3;

/// Runs every check at the atom and drive of `config` (scenario assumption
/// sets applied per check).
ValidationReport run_validation(const RunConfig& config, const ClosedFormSet& forms = {},
                                unsigned threads = 0);

}  // namespace rydhet
