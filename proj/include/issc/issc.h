/* C interface to the issc library. All objects are opaque handles owned by the
 * caller and released with the matching *_free function. Functions return an
 * issc_status; on failure issc_last_error() describes the problem (the text is
 * thread-local and valid until the next call on the same thread). */
#ifndef ISSC_ISSC_H
#define ISSC_ISSC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ISSC_BUILDING_LIBRARY)
#define ISSC_API __declspec(dllexport)
#else
#define ISSC_API __declspec(dllimport)
#endif
#else
#define ISSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum issc_status {
  ISSC_OK = 0,
  ISSC_ERROR_CONFIG = 1,
  ISSC_ERROR_INFEASIBLE = 2,
  ISSC_ERROR_BLOWUP = 3,
  ISSC_ERROR_IO = 4,
  ISSC_ERROR_VALIDATION = 5,
  ISSC_ERROR_INVALID_ARGUMENT = 6,
  ISSC_ERROR_UNSUPPORTED_BOUNDARY = 7,
  ISSC_ERROR_NUMERICAL = 8,
  ISSC_ERROR_INTERNAL = 9
} issc_status;

typedef struct issc_config issc_config;
typedef struct issc_certificate issc_certificate;
typedef struct issc_trace issc_trace;
typedef struct issc_validation issc_validation;

ISSC_API const char* issc_last_error(void);

/* Process exit code for a status: 0 ok, 1 config, 2 infeasible, 3 blow-up,
 * 4 I/O, 5 validation failed. Argument and internal errors map to 1,
 * numerical failures to 3. */
ISSC_API int issc_exit_code(issc_status status);

/* Strings returned through char** out-parameters are released here. */
ISSC_API void issc_string_free(char* text);

ISSC_API issc_status issc_config_load(const char* path, issc_config** out);
ISSC_API issc_status issc_config_parse(const char* text, issc_config** out);
ISSC_API void issc_config_free(issc_config* config);

/* ISSC_ERROR_INFEASIBLE leaves *out NULL; the reason is in issc_last_error(). */
ISSC_API issc_status issc_certify(const issc_config* config, issc_certificate** out);
ISSC_API issc_status issc_certificate_load(const char* path, issc_certificate** out);
ISSC_API issc_status issc_certificate_parse_json(const char* json, issc_certificate** out);
ISSC_API issc_status issc_certificate_to_json(const issc_certificate* cert, char** out);
ISSC_API const char* issc_certificate_path(const issc_certificate* cert);
ISSC_API double issc_certificate_c_decay(const issc_certificate* cert);
ISSC_API double issc_certificate_c_gain_boundary(const issc_certificate* cert);
ISSC_API double issc_certificate_c_gain_distributed(const issc_certificate* cert);
ISSC_API size_t issc_certificate_split_count(const issc_certificate* cert);
ISSC_API double issc_certificate_split(const issc_certificate* cert, size_t index);
ISSC_API void issc_certificate_free(issc_certificate* cert);

/* ISSC_ERROR_BLOWUP reports the first non-finite time in issc_last_error(). */
ISSC_API issc_status issc_simulate(const issc_config* config, issc_trace** out);
ISSC_API size_t issc_trace_size(const issc_trace* trace);
ISSC_API double issc_trace_time(const issc_trace* trace, size_t index);
ISSC_API double issc_trace_energy(const issc_trace* trace, size_t index);
ISSC_API issc_status issc_trace_to_csv(const issc_trace* trace, char** out);
ISSC_API issc_status issc_trace_write_csv(const issc_trace* trace, const char* path);
ISSC_API void issc_trace_free(issc_trace* trace);

/* `cert` may be NULL, in which case the config's [certificate] section is
 * used. A failed check still fills *out and returns ISSC_ERROR_VALIDATION. */
ISSC_API issc_status issc_validate(const issc_config* config, const issc_certificate* cert,
                                   issc_validation** out);
ISSC_API int issc_validation_passed(const issc_validation* report);
ISSC_API double issc_validation_max_violation(const issc_validation* report);
ISSC_API issc_status issc_validation_to_text(const issc_validation* report, char** out);
ISSC_API void issc_validation_free(issc_validation* report);

/* Randomized inequality suite. The one-line summary is always written;
 * ISSC_ERROR_VALIDATION signals at least one violation. */
ISSC_API issc_status issc_lemma_check(size_t n_samples, uint64_t seed, char** summary);

/* Writes the convergence table; *order is NaN and *degenerate is 1 when some
 * grid reproduces the exact solution exactly. */
ISSC_API issc_status issc_convergence(const issc_config* config, char** table, double* order,
                                      int* degenerate);

#ifdef __cplusplus
}
#endif

#endif
