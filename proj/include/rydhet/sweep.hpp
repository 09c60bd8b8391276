#pragma once

// Scenario sweeps and machine-readable output. Every emitted document embeds
// the fully defaulted configuration and its hash.

#include <string>
#include <vector>

#include "rydhet/config.hpp"
#include "rydhet/optimize.hpp"

namespace rydhet {

struct SweepRow {
  double x_mhz = 0;  // detuning or gamma_t, cyclic MHz
  double chi0 = 0;
  double chi1 = 0;         // s/rad
  double kappa = 0;        // W s/rad
  double kappa_prime = 0;  // W s/rad
  double p_dc = 0;         // W
  double p_pp = 0;         // W, at drive.omega_s
  double k_l_chi0 = 0;
  double k_l_chi1_omega_s = 0;  // at drive.omega_s
  double gain_db = 0;  // |coefficient(x) / coefficient(0)|, mode-selected coefficient
  std::string error;   // nonempty: row failed, numeric fields are NaN
};

struct SweepResult {
  RunConfig config;
  std::vector<SweepRow> rows;  // ascending x
  int error_count = 0;
  std::vector<std::string> warnings;  // deduplicated, in first-seen row order
};

/// Evaluates the configured grid. Rows run in parallel; the result does not
/// depend on `threads`. Per-row numerical failures become NaN rows.
SweepResult run_sweep(const RunConfig& config, unsigned threads = 0);

std::string sweep_to_csv(const SweepResult& r);
std::string sweep_to_json(const SweepResult& r);
/// Format selected by config.output.format.
std::string format_sweep(const SweepResult& r);

std::string optimization_report_to_json(const OptimizationReport& r, const RunConfig& config);

/// Writes `text` to `path`; throws IoError on failure.
void write_text_file(const std::string& path, const std::string& text);

/// Shortest decimal that round-trips to the same double ("nan", "inf" for
/// non-finite values).
std::string format_double(double v);

}  // namespace rydhet
