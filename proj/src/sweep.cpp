#include "rydhet/sweep.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <json.hpp>

#include "rydhet/errors.hpp"
#include "rydhet/parallel.hpp"
#include "rydhet/readout.hpp"

namespace rydhet {

using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* kUnits =
    "x_mhz cyclic MHz; chi0, k_l_chi0, k_l_chi1_omega_s dimensionless; chi1 s/rad; "
    "kappa, kappa_prime W s/rad; p_dc, p_pp W; gain_db 10 log10 of the mode-selected "
    "coefficient relative to x = 0";

const char* kColumns[] = {"x_mhz", "chi0",     "chi1",     "kappa",            "kappa_prime",
                          "p_dc",  "p_pp",     "k_l_chi0", "k_l_chi1_omega_s", "gain_db"};

bool use_numeric(const SweepSection& s) {
  return s.method == SweepMethod::Numeric ||
         (s.method == SweepMethod::Auto && s.axis == DetuningAxis::TransitRate);
}

SusceptibilityDecomposition decompose(const ResolvedConfig& rc, const SweepSection& s,
                                      double value) {
  const DetuningScenario sc{s.axis, value};
  if (!use_numeric(s)) return chi_decompose_closed_form(rc.atom, rc.drive, sc);
  const DriveConfig d =
      rc.drive.omega_s() > 0 ? rc.drive : rc.drive.modified([&](DriveParams& p) {
        p.omega_s = mhz_to_rad_s(s.extraction_omega_s_mhz);
      });
  return chi_decompose_numeric(rc.atom, d, sc, s.phase_samples);
}

double selected(const ReadoutResult& r, DetectionMode m) {
  return m == DetectionMode::GeneralCase ? r.kappa : r.kappa_prime;
}

json row_json(const SweepRow& r) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j = {{"x_mhz", num(r.x_mhz)},
            {"chi0", num(r.chi0)},
            {"chi1", num(r.chi1)},
            {"kappa", num(r.kappa)},
            {"kappa_prime", num(r.kappa_prime)},
            {"p_dc", num(r.p_dc)},
            {"p_pp", num(r.p_pp)},
            {"k_l_chi0", num(r.k_l_chi0)},
            {"k_l_chi1_omega_s", num(r.k_l_chi1_omega_s)},
            {"gain_db", num(r.gain_db)}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

SweepResult run_sweep(const RunConfig& config, unsigned threads) {
  const ResolvedConfig rc = resolve(config);
  const SweepSection& s = config.sweep;
  const double kl = rc.atom.wavevector() * rc.atom.cell_length();
  const double omega_s = rc.drive.omega_s();

  SweepResult out;
  out.config = config;
  out.rows.resize(static_cast<std::size_t>(s.n));

  double reference = kNaN;
  std::string reference_error;
  try {
    reference = selected(
        evaluate_readout(decompose(rc, s, 0.0), rc.atom, rc.readout, omega_s),
        rc.readout.detection_mode);
    if (reference == 0.0) reference_error = "reference coefficient at x = 0 is zero";
  } catch (const std::exception& e) {
    reference_error = std::string("reference point x = 0: ") + e.what();
  }

  std::vector<std::vector<std::string>> row_warnings(out.rows.size());
  parallel_for(
      out.rows.size(),
      [&](std::size_t i) {
        SweepRow& row = out.rows[i];
        const double k = double(s.n - 1);
        row.x_mhz = s.n == 1 ? s.lo_mhz : (s.lo_mhz * (k - double(i)) + s.hi_mhz * double(i)) / k;
        try {
          const auto dec = decompose(rc, s, mhz_to_rad_s(row.x_mhz));
          const auto ro = evaluate_readout(dec, rc.atom, rc.readout, omega_s);
          row.chi0 = dec.chi0;
          row.chi1 = dec.chi1;
          row.kappa = ro.kappa;
          row.kappa_prime = ro.kappa_prime;
          row.p_dc = ro.p_dc;
          row.p_pp = ro.p_pp;
          row.k_l_chi0 = kl * dec.chi0;
          row.k_l_chi1_omega_s = kl * dec.chi1 * omega_s;
          if (!reference_error.empty()) throw NumericalError(reference_error);
          row.gain_db = gain_db(selected(ro, rc.readout.detection_mode), reference);
          row_warnings[i] = dec.warnings;
          row_warnings[i].insert(row_warnings[i].end(), ro.warnings.begin(), ro.warnings.end());
        } catch (const std::exception& e) {
          const double x = row.x_mhz;
          row = SweepRow{};
          row.x_mhz = x;
          row.chi0 = row.chi1 = row.kappa = row.kappa_prime = row.p_dc = row.p_pp = kNaN;
          row.k_l_chi0 = row.k_l_chi1_omega_s = row.gain_db = kNaN;
          row.error = e.what();
        }
      },
      threads);

  std::set<std::string> seen;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    if (!out.rows[i].error.empty()) ++out.error_count;
    for (const auto& w : row_warnings[i])
      if (seen.insert(w).second) out.warnings.push_back(w);
  }
  return out;
}

std::string sweep_to_csv(const SweepResult& r) {
  std::string s;
  s += "# rydhet sweep\n";
  s += "# config_hash: " + config_hash(r.config) + "\n";
  s += std::string("# axis: ") + to_string(r.config.sweep.axis) + "\n";
  s += std::string("# method: ") + (use_numeric(r.config.sweep) ? "numeric" : "closed_form") +
       "\n";
  s += std::string("# units: ") + kUnits + "\n";
  for (const auto& w : r.warnings) s += "# warning: " + w + "\n";
  s += "# config: " + serialize_config(r.config, -1) + "\n";
  for (std::size_t c = 0; c < std::size(kColumns); ++c)
    s += std::string(c ? "," : "") + kColumns[c];
  s += "\n";
  for (const auto& row : r.rows) {
    const double v[] = {row.x_mhz, row.chi0,     row.chi1,     row.kappa,    row.kappa_prime,
                        row.p_dc,  row.p_pp,     row.k_l_chi0, row.k_l_chi1_omega_s,
                        row.gain_db};
    for (std::size_t c = 0; c < std::size(v); ++c) s += (c ? "," : "") + format_double(v[c]);
    s += "\n";
  }
  if (r.error_count > 0) {
    s += "# errors: " + std::to_string(r.error_count) + "\n";
    for (const auto& row : r.rows)
      if (!row.error.empty()) s += "# error at x_mhz=" + format_double(row.x_mhz) + ": " + row.error + "\n";
  }
  return s;
}

std::string sweep_to_json(const SweepResult& r) {
  json meta = {
      {"tool", "rydhet sweep"},
      {"config_hash", config_hash(r.config)},
      {"axis", to_string(r.config.sweep.axis)},
      {"method", use_numeric(r.config.sweep) ? "numeric" : "closed_form"},
      {"units", kUnits},
      {"columns", kColumns},
      {"warnings", r.warnings},
      {"error_count", r.error_count},
      {"config", json::parse(serialize_config(r.config, -1))},
  };
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(row_json(row));
  return json{{"meta", meta}, {"rows", rows}}.dump(2) + "\n";
}

std::string format_sweep(const SweepResult& r) {
  return r.config.output.format == OutputFormat::Json ? sweep_to_json(r) : sweep_to_csv(r);
}

std::string optimization_report_to_json(const OptimizationReport& r, const RunConfig& config) {
  json meta = {
      {"tool", "rydhet optimize"},
      {"config_hash", config_hash(config)},
      {"units", "frequencies in cyclic MHz; kappa in W s/rad; gain_db = 10 log10 |kappa(opt) / "
                "kappa(0)|"},
      {"config", json::parse(serialize_config(config, -1))},
  };
  json rep = {
      {"problem", to_string(r.problem)},
      {"axis", to_string(r.axis)},
      {"method", to_string(r.method)},
      {"optimum_mhz", rad_s_to_mhz(r.optimum)},
      {"kappa_at_optimum", r.kappa_at_optimum},
      {"kappa_at_zero", r.kappa_at_zero},
      {"gain_db", r.gain_db},
      {"partner_optimum_mhz", rad_s_to_mhz(r.partner_optimum)},
      {"partner_kappa", r.partner_kappa},
      {"window_mhz", {rad_s_to_mhz(r.window_lo), rad_s_to_mhz(r.window_hi)}},
      {"coarse_n", r.coarse_n},
      {"refine_iters", r.refine_iters},
      {"warnings", r.warnings},
  };
  if (r.grid) {
    rep["grid"] = {
        {"argmax_mhz", rad_s_to_mhz(r.grid->argmax)},
        {"value", r.grid->value},
        {"partner_argmax_mhz", rad_s_to_mhz(r.grid->partner_argmax)},
        {"partner_value", r.grid->partner_value},
        {"bracket_mhz", rad_s_to_mhz(r.grid->bracket)},
        {"evaluations", r.grid->evaluations},
    };
  }
  if (!r.curve.empty()) {
    json curve = json::array();
    for (const auto& p : r.curve)
      curve.push_back({{"gamma_mhz", rad_s_to_mhz(p.x)}, {"kappa", p.kappa}, {"gain_db", p.gain_db}});
    rep["curve"] = curve;
    rep["curve_strictly_decreasing"] = r.curve_strictly_decreasing;
  }
  return json{{"meta", meta}, {"report", rep}}.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace rydhet
