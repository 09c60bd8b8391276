#include "rydhet/rydhet.h"

#include <string>

#include "rydhet/config.hpp"
#include "rydhet/errors.hpp"
#include "rydhet/liouvillian.hpp"
#include "rydhet/optimize.hpp"
#include "rydhet/sweep.hpp"
#include "rydhet/validate.hpp"

struct rydhet_config {
  rydhet::RunConfig value;
};

struct rydhet_buffer {
  std::string value;
};

namespace {

thread_local std::string g_last_error;

rydhet_status fail(rydhet_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Maps library exceptions onto status codes.
template <class F>
rydhet_status guarded(F&& f) {
  using namespace rydhet;
  try {
    f();
    g_last_error.clear();
    return RYDHET_OK;
  } catch (const ConfigError& e) {
    return fail(RYDHET_ERR_CONFIG, e.what());
  } catch (const IoError& e) {
    return fail(RYDHET_ERR_IO, e.what());
  } catch (const DomainError& e) {
    return fail(RYDHET_ERR_DOMAIN, e.what());
  } catch (const ContractError& e) {
    return fail(RYDHET_ERR_CONTRACT, e.what());
  } catch (const NumericalError& e) {
    return fail(RYDHET_ERR_NUMERIC, e.what());
  } catch (const ConsistencyError& e) {
    return fail(RYDHET_ERR_NUMERIC, e.what());
  } catch (const RangeError& e) {
    return fail(RYDHET_ERR_NUMERIC, e.what());
  } catch (const IntegrationError& e) {
    return fail(RYDHET_ERR_NUMERIC, e.what());
  } catch (const TimeoutError& e) {
    return fail(RYDHET_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(RYDHET_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RYDHET_ERR_INTERNAL, "unknown exception");
  }
}

#define RYDHET_REQUIRE(ptr)                                                   \
  do {                                                                        \
    if (!(ptr)) return fail(RYDHET_ERR_ARGUMENT, #ptr " must not be null");   \
  } while (0)

rydhet_buffer* make_buffer(std::string s) { return new rydhet_buffer{std::move(s)}; }

}  // namespace

extern "C" {

const char* rydhet_last_error(void) { return g_last_error.c_str(); }

const char* rydhet_version(void) { return "0.1.0"; }

rydhet_status rydhet_config_default(rydhet_config** out) {
  RYDHET_REQUIRE(out);
  return guarded([&] { *out = new rydhet_config{}; });
}

rydhet_status rydhet_config_from_json(const char* json_text, rydhet_config** out) {
  RYDHET_REQUIRE(json_text);
  RYDHET_REQUIRE(out);
  return guarded([&] { *out = new rydhet_config{rydhet::parse_config(json_text)}; });
}

rydhet_status rydhet_config_load(const char* path, rydhet_config** out) {
  RYDHET_REQUIRE(path);
  RYDHET_REQUIRE(out);
  return guarded([&] { *out = new rydhet_config{rydhet::load_config(path)}; });
}

rydhet_status rydhet_config_to_json(const rydhet_config* cfg, rydhet_buffer** out) {
  RYDHET_REQUIRE(cfg);
  RYDHET_REQUIRE(out);
  return guarded([&] { *out = make_buffer(rydhet::serialize_config(cfg->value) + "\n"); });
}

rydhet_status rydhet_config_hash(const rydhet_config* cfg, rydhet_buffer** out) {
  RYDHET_REQUIRE(cfg);
  RYDHET_REQUIRE(out);
  return guarded([&] { *out = make_buffer(rydhet::config_hash(cfg->value)); });
}

rydhet_status rydhet_config_output_path(const rydhet_config* cfg, rydhet_buffer** out) {
  RYDHET_REQUIRE(cfg);
  RYDHET_REQUIRE(out);
  return guarded([&] { *out = make_buffer(cfg->value.output.path); });
}

void rydhet_config_free(rydhet_config* cfg) { delete cfg; }

const char* rydhet_buffer_data(const rydhet_buffer* buf) { return buf ? buf->value.c_str() : ""; }

size_t rydhet_buffer_size(const rydhet_buffer* buf) { return buf ? buf->value.size() : 0; }

void rydhet_buffer_free(rydhet_buffer* buf) { delete buf; }

rydhet_status rydhet_write_file(const char* path, const rydhet_buffer* buf) {
  RYDHET_REQUIRE(path);
  RYDHET_REQUIRE(buf);
  return guarded([&] { rydhet::write_text_file(path, buf->value); });
}

rydhet_status rydhet_sweep(const rydhet_config* cfg, rydhet_format format, unsigned threads,
                           rydhet_buffer** out) {
  RYDHET_REQUIRE(cfg);
  RYDHET_REQUIRE(out);
  if (format < RYDHET_FORMAT_FROM_CONFIG || format > RYDHET_FORMAT_JSON)
    return fail(RYDHET_ERR_ARGUMENT, "unknown output format");
  return guarded([&] {
    rydhet::RunConfig c = cfg->value;
    if (format == RYDHET_FORMAT_CSV) c.output.format = rydhet::OutputFormat::Csv;
    if (format == RYDHET_FORMAT_JSON) c.output.format = rydhet::OutputFormat::Json;
    *out = make_buffer(rydhet::format_sweep(rydhet::run_sweep(c, threads)));
  });
}

rydhet_status rydhet_optimize(const rydhet_config* cfg, const char* problem, unsigned threads,
                              rydhet_buffer** out) {
  RYDHET_REQUIRE(cfg);
  RYDHET_REQUIRE(problem);
  RYDHET_REQUIRE(out);
  const auto p = rydhet::parse_problem(problem);
  if (!p)
    return fail(RYDHET_ERR_ARGUMENT,
                std::string("unknown problem '") + problem + "' (expected p1..p5)");
  return guarded([&] {
    auto rc = rydhet::resolve(cfg->value);
    rc.optimize.threads = threads;
    const auto report = rydhet::solve(*p, rc.atom, rc.drive, rc.readout, rc.optimize);
    *out = make_buffer(rydhet::optimization_report_to_json(report, cfg->value));
  });
}

rydhet_status rydhet_validate(const rydhet_config* cfg, unsigned threads, int* all_passed,
                              rydhet_buffer** report) {
  RYDHET_REQUIRE(all_passed);
  RYDHET_REQUIRE(report);
  return guarded([&] {
    const auto r = rydhet::run_validation(cfg ? cfg->value : rydhet::RunConfig{}, {}, threads);
    *all_passed = r.all_passed() ? 1 : 0;
    *report = make_buffer(r.text());
  });
}

rydhet_status rydhet_transit_rate(double beam_waist_m, double mass_kg, double temperature_k,
                                  double* out_per_s) {
  RYDHET_REQUIRE(out_per_s);
  return guarded(
      [&] { *out_per_s = rydhet::transit_rate(beam_waist_m, mass_kg, temperature_k); });
}

rydhet_status rydhet_optimal_local_rabi_mhz(double omega_p_mhz, double omega_c_mhz,
                                            double gamma2_mhz, double* out_mhz) {
  RYDHET_REQUIRE(out_mhz);
  return guarded([&] {
    using rydhet::mhz_to_rad_s;
    *out_mhz = rydhet::rad_s_to_mhz(rydhet::optimal_local_rabi(
        mhz_to_rad_s(omega_p_mhz), mhz_to_rad_s(omega_c_mhz), mhz_to_rad_s(gamma2_mhz)));
  });
}

rydhet_status rydhet_steady_state_rho21(const rydhet_config* cfg, double phase, double* re,
                                        double* im) {
  RYDHET_REQUIRE(cfg);
  RYDHET_REQUIRE(re);
  RYDHET_REQUIRE(im);
  return guarded([&] {
    const auto rc = rydhet::resolve(cfg->value);
    const auto rho21 = rydhet::steady_state(rc.atom, rc.drive, phase).rho21();
    *re = rho21.real();
    *im = rho21.imag();
  });
}

rydhet_status rydhet_chi_decompose(const rydhet_config* cfg, rydhet_axis axis,
                                   double value_mhz, int numeric, double* chi0, double* chi1) {
  RYDHET_REQUIRE(cfg);
  RYDHET_REQUIRE(chi0);
  RYDHET_REQUIRE(chi1);
  if (axis < RYDHET_AXIS_DELTA_L || axis > RYDHET_AXIS_GAMMA_T)
    return fail(RYDHET_ERR_ARGUMENT, "unknown axis");
  return guarded([&] {
    const auto rc = rydhet::resolve(cfg->value);
    const rydhet::DetuningScenario s{static_cast<rydhet::DetuningAxis>(axis),
                                     rydhet::mhz_to_rad_s(value_mhz)};
    rydhet::SusceptibilityDecomposition d;
    if (numeric) {
      const auto drive = rc.drive.omega_s() > 0
                             ? rc.drive
                             : rc.drive.modified([&](rydhet::DriveParams& p) {
                                 p.omega_s = rydhet::mhz_to_rad_s(
                                     cfg->value.sweep.extraction_omega_s_mhz);
                               });
      d = rydhet::chi_decompose_numeric(rc.atom, drive, s, cfg->value.sweep.phase_samples);
    } else {
      d = rydhet::chi_decompose_closed_form(rc.atom, rc.drive, s);
    }
    *chi0 = d.chi0;
    *chi1 = d.chi1;
  });
}

}  // extern "C"
