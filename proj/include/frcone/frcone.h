#ifndef FRCONE_FRCONE_H
#define FRCONE_FRCONE_H

#include <stddef.h>

#if defined(FRC_BUILDING_LIBRARY)
#define FRC_API __attribute__((visibility("default")))
#else
#define FRC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Verification of multiparameter Forelli-Rudin type operators on the tube over the
 * forward light cone: exact theorem predicates, Schur witnesses and Monte Carlo
 * experiments. All strings are UTF-8 and owned by the library unless noted. */

typedef enum frc_status {
  FRC_OK = 0,
  FRC_ERR_PARSE = 1,
  FRC_ERR_DOMAIN = 2,
  FRC_ERR_BRANCH_CUT = 3,
  FRC_ERR_IO = 4,
  FRC_ERR_ARGUMENT = 5,
  FRC_ERR_INTERNAL = 6
} frc_status;

/* Process exit codes carried by reports. */
enum {
  FRC_EXIT_PASS = 0,
  FRC_EXIT_FAILED = 1,
  FRC_EXIT_RANGE_GATE = 2,
  FRC_EXIT_PARSE = 3,
  FRC_EXIT_DIVERGENCE = 4
};

typedef struct frc_config frc_config;
typedef struct frc_report frc_report;

FRC_API const char* frc_version(void);

/* Message of the last failing call on this thread ("" when none). */
FRC_API const char* frc_last_error(void);

/* Documentation of every config key. */
FRC_API const char* frc_config_help(void);

FRC_API frc_status frc_config_new(frc_config** out);

/* Parses INI text. On FRC_ERR_PARSE the 1-based line and column are stored
 * when the pointers are non-null (0 when unknown). */
FRC_API frc_status frc_config_parse(const char* text, frc_config** out, int* error_line, int* error_column);
FRC_API frc_status frc_config_load(const char* path, frc_config** out, int* error_line, int* error_column);

/* Sets section.key to a raw value string, as if written in the file. */
FRC_API frc_status frc_config_set(frc_config* config, const char* section, const char* key, const char* value);
FRC_API void frc_config_free(frc_config* config);

/* Runs a command: "check", "witness", "verify" (target "lemma21", "remark21",
 * "schur", "duality") or "scaling" (target "scaling" or "blowup"; NULL means
 * "scaling"). Input errors do not fail the call; they are reported through the
 * exit code of the report. */
FRC_API frc_status frc_run(const frc_config* config, const char* command, const char* target, frc_report** out);

FRC_API int frc_report_exit_code(const frc_report* report);
FRC_API const char* frc_report_json(const frc_report* report);
/* Flat table for scaling reports, "" otherwise. */
FRC_API const char* frc_report_csv(const frc_report* report);
FRC_API const char* frc_report_summary(const frc_report* report);
FRC_API const char* frc_report_diagnostics(const frc_report* report);
FRC_API const char* frc_report_file_stem(const frc_report* report);

/* Writes the report under directory (NULL: the configured output directory).
 * The JSON path is copied into path_out when it fits. */
FRC_API frc_status frc_report_write(const frc_report* report, const char* directory, char* path_out, size_t path_len);
FRC_API void frc_report_free(frc_report* report);

/* g(y) = y_n^2 - |y'|^2 for y strictly inside the cone. */
FRC_API frc_status frc_g_form(const double* y, size_t n, double* out);

/* Q(re + i im) = sum_{j<n} w_j^2 - w_n^2. */
FRC_API frc_status frc_q_form(const double* re, const double* im, size_t n, double* out_re, double* out_im);

/* Principal power w^e with e an exact rational string "num/den". */
FRC_API frc_status frc_cpow(double re, double im, const char* exponent, double* out_re, double* out_im);

#ifdef __cplusplus
}
#endif

#endif
