#ifndef RYDHET_H
#define RYDHET_H

/* C interface to the rydhet library. Every function returns a status code;
 * on failure rydhet_last_error() describes the problem (thread-local, valid
 * until the next call on the same thread). Output handles are only written on
 * success. Frequencies are cyclic MHz unless a name says otherwise. */

#include <stddef.h>

#if defined(_WIN32)
#define RYDHET_API __declspec(dllexport)
#else
#define RYDHET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rydhet_status {
  RYDHET_OK = 0,
  RYDHET_ERR_CONFIG = 1,   /* invalid configuration document or field */
  RYDHET_ERR_IO = 2,       /* unreadable or unwritable file */
  RYDHET_ERR_NUMERIC = 3,  /* singular solve, NaN, failed cross-check, overflow */
  RYDHET_ERR_DOMAIN = 4,   /* physical argument out of range */
  RYDHET_ERR_CONTRACT = 5, /* closed form called outside its assumptions */
  RYDHET_ERR_ARGUMENT = 6, /* null pointer or unknown enum value */
  RYDHET_ERR_INTERNAL = 7
} rydhet_status;

typedef enum rydhet_axis {
  RYDHET_AXIS_DELTA_L = 0,
  RYDHET_AXIS_DELTA_P = 1,
  RYDHET_AXIS_DELTA_C = 2,
  RYDHET_AXIS_GAMMA_T = 3
} rydhet_axis;

typedef enum rydhet_format {
  RYDHET_FORMAT_FROM_CONFIG = -1,
  RYDHET_FORMAT_CSV = 0,
  RYDHET_FORMAT_JSON = 1
} rydhet_format;

typedef struct rydhet_config rydhet_config;
typedef struct rydhet_buffer rydhet_buffer;

RYDHET_API const char* rydhet_last_error(void);
RYDHET_API const char* rydhet_version(void);

/* Configuration handles. */
RYDHET_API rydhet_status rydhet_config_default(rydhet_config** out);
RYDHET_API rydhet_status rydhet_config_from_json(const char* json_text, rydhet_config** out);
RYDHET_API rydhet_status rydhet_config_load(const char* path, rydhet_config** out);
/* Fully defaulted document. */
RYDHET_API rydhet_status rydhet_config_to_json(const rydhet_config* cfg, rydhet_buffer** out);
RYDHET_API rydhet_status rydhet_config_hash(const rydhet_config* cfg, rydhet_buffer** out);
/* Output path from the config ("" means stdout). */
RYDHET_API rydhet_status rydhet_config_output_path(const rydhet_config* cfg, rydhet_buffer** out);
RYDHET_API void rydhet_config_free(rydhet_config* cfg);

/* Byte buffers; data is NUL-terminated, size excludes the terminator. */
RYDHET_API const char* rydhet_buffer_data(const rydhet_buffer* buf);
RYDHET_API size_t rydhet_buffer_size(const rydhet_buffer* buf);
RYDHET_API void rydhet_buffer_free(rydhet_buffer* buf);
RYDHET_API rydhet_status rydhet_write_file(const char* path, const rydhet_buffer* buf);

/* Commands. threads = 0 uses all hardware threads; output never depends on it. */
RYDHET_API rydhet_status rydhet_sweep(const rydhet_config* cfg, rydhet_format format,
                                      unsigned threads, rydhet_buffer** out);
/* problem: "p1" .. "p5". Writes a JSON report. */
RYDHET_API rydhet_status rydhet_optimize(const rydhet_config* cfg, const char* problem,
                                         unsigned threads, rydhet_buffer** out);
/* cfg may be NULL (defaults). *all_passed is 1 iff every check passed; the
 * report is one PASS/FAIL line per check. */
RYDHET_API rydhet_status rydhet_validate(const rydhet_config* cfg, unsigned threads,
                                         int* all_passed, rydhet_buffer** report);

/* Scalar helpers (SI units, rates in 1/s). */
RYDHET_API rydhet_status rydhet_transit_rate(double beam_waist_m, double mass_kg,
                                             double temperature_k, double* out_per_s);
RYDHET_API rydhet_status rydhet_optimal_local_rabi_mhz(double omega_p_mhz, double omega_c_mhz,
                                                       double gamma2_mhz, double* out_mhz);
/* rho21 of the steady state at the config's atom and drive, beat phase in rad. */
RYDHET_API rydhet_status rydhet_steady_state_rho21(const rydhet_config* cfg, double phase,
                                                   double* re, double* im);
/* chi0 (dimensionless) and chi1 (s/rad) with `value_mhz` on `axis`. numeric != 0
 * uses harmonic extraction instead of the closed form. */
RYDHET_API rydhet_status rydhet_chi_decompose(const rydhet_config* cfg, rydhet_axis axis,
                                              double value_mhz, int numeric, double* chi0,
                                              double* chi1);

#ifdef __cplusplus
}
#endif

#endif /* RYDHET_H */
