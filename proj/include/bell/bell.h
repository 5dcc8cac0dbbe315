#ifndef BELL_BELL_H
#define BELL_BELL_H

/* C interface to the Bell inequality toolkit: coefficient-matrix handles,
 * exact classical bounds, Tsirelson bounds with tightness certificates,
 * Tsirelson-preserving modifications, dimension-restricted see-saw bounds,
 * violation searches and the published-value reproduction driver.
 *
 * All functions return BELL_OK or an error code; bell_last_error() describes
 * the most recent failure on the calling thread. Returned strings are heap
 * allocations owned by the caller; release them with bell_string_free.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define BELL_OK 0
#define BELL_ERR_INVALID 1
#define BELL_ERR_BUDGET 2
#define BELL_ERR_INTERNAL 3

typedef struct bell_matrix bell_matrix;

/* Provenance block embedded in every JSON report. `arguments` is an array of
 * `n_arguments` NUL-terminated strings; `has_seed` 0 marks deterministic
 * commands. */
typedef struct bell_manifest {
  const char* command;
  const char* const* arguments;
  int n_arguments;
  int has_seed;
  uint64_t seed;
} bell_manifest;

typedef struct bell_search_config {
  const char* objective; /* "violation" or "dim:<K>" */
  long global_samples;
  int local_refine;
  double init_step;
  double min_step;
  uint64_t seed;
  int seesaw_restarts;
  int refine_top_k;
  long max_sweeps;
  int epsilon_trick;
} bell_search_config;

const char* bell_version(void);
const char* bell_last_error(void);
void bell_string_free(char* s);

int bell_matrix_from_csv_file(const char* path, bell_matrix** out);
int bell_matrix_from_csv_text(const char* text, bell_matrix** out);
int bell_matrix_dims(const bell_matrix* m, int* rows, int* cols);
int bell_matrix_to_csv(const bell_matrix* m, char** out_csv);
void bell_matrix_free(bell_matrix* m);

/* Classical bound, Tsirelson bound, violation and tightness certificate as a
 * JSON report. dprime > 0 appends a see-saw entry for that dimension with the
 * given restarts and the manifest seed. */
int bell_bounds_json(const bell_matrix* m, const bell_manifest* manifest, int dprime,
                     int restarts, char** out_json);

/* spec_json: {"angles_r1": [...], "reflect_r1": bool, ...} */
int bell_twist_json(const bell_matrix* m, const char* spec_json,
                    const bell_manifest* manifest, char** out_json, char** out_matrix_csv);

/* spec_json: {"sigma": [...], "lambda1": x, "lambdas": [...]}; force = 1
 * applies an inadmissible shift anyway and records the recertification. */
int bell_shift_json(const bell_matrix* m, const char* spec_json, int force,
                    const bell_manifest* manifest, char** out_json, char** out_matrix_csv);

void bell_search_config_init(bell_search_config* cfg);
int bell_optimize_json(const bell_matrix* m, const bell_search_config* cfg,
                       const bell_manifest* manifest, char** out_json,
                       char** out_matrix_csv);

/* Violation scan over one rotation angle of the three-axis measured family;
 * axis is one of phi|theta|psi or yaw|pitch|roll. Emits a headerless
 * two-column CSV (angle, Q/B) plus a JSON summary. */
int bell_scan_csv(double phi, double theta, double psi, const char* axis, int steps,
                  const bell_manifest* manifest, char** out_csv, char** out_json);

/* mode "random" or "twisted"; emits (index, nu) CSV plus a JSON summary. */
int bell_histogram(const char* mode, long n, uint64_t seed,
                   const bell_manifest* manifest, char** out_csv, char** out_json);

/* Reruns the published-value checks for one scenario: chsh, gisin3, gisin6,
 * fr2..fr5, rotated, d6. pass receives 1/0; outdir (nullable) collects CSV
 * series. */
int bell_repro(const char* scenario, const char* outdir, char** out_text, int* pass);

#ifdef __cplusplus
}
#endif

#endif /* BELL_BELL_H */
