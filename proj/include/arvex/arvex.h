/* C API for the arvex library: opaque handles, integer status codes, and a
 * thread-local last-error message. Every function returns ARVEX_OK on
 * success; on failure the out parameters are untouched and
 * arvex_last_error() describes the problem. Handles are freed with the
 * matching *_free function; strings returned through char** are freed with
 * arvex_string_free. */

#ifndef ARVEX_ARVEX_H
#define ARVEX_ARVEX_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define ARVEX_OK 0
#define ARVEX_ERR_INVALID 1  /* bad input, shape mismatch, parse failure */
#define ARVEX_ERR_SOLVER 2   /* optimizer failed or certification impossible */
#define ARVEX_ERR_INTERNAL 3 /* violated structural guarantee */

typedef struct arvex_tuple arvex_tuple;
typedef struct arvex_pencil arvex_pencil;
typedef struct arvex_trace arvex_trace;
typedef struct arvex_decomposition arvex_decomposition;

typedef struct arvex_options {
  double tol_sym;    /* self-adjointness / isometry checks   (1e-10) */
  double tol_psd;    /* PSD slack                            (1e-9)  */
  double tol_kernel; /* relative kernel / rank threshold     (1e-8)  */
  double tol_opt;    /* optimizer convergence                (1e-9)  */
  int max_iter;      /* per solver call                      (500)   */
  int verbosity;     /* 0 quiet, 1 info, 2 trace             (0)     */
  uint64_t seed;     /* RNG stream for every stochastic step (0)     */
} arvex_options;

void arvex_options_init(arvex_options* opts);

const char* arvex_last_error(void);
const char* arvex_version(void);
void arvex_string_free(char* s);

/* ---- tuples and pencils ---- */

int arvex_tuple_parse(const char* json_text, arvex_tuple** out);
int arvex_tuple_read(const char* path, arvex_tuple** out);
int arvex_tuple_to_json(const arvex_tuple* t, char** out);
int arvex_tuple_write(const arvex_tuple* t, const char* path);
void arvex_tuple_free(arvex_tuple* t);

int arvex_tuple_length(const arvex_tuple* t);       /* g */
int arvex_tuple_rows(const arvex_tuple* t);
int arvex_tuple_cols(const arvex_tuple* t);
int arvex_tuple_is_complex(const arvex_tuple* t);

int arvex_pencil_parse(const char* json_text, arvex_pencil** out);
int arvex_pencil_read(const char* path, arvex_pencil** out);
int arvex_pencil_to_json(const arvex_pencil* p, char** out);
int arvex_pencil_write(const arvex_pencil* p, const char* path);
void arvex_pencil_free(arvex_pencil* p);

int arvex_pencil_size(const arvex_pencil* p);        /* d */
int arvex_pencil_length(const arvex_pencil* p);      /* g */

/* ---- membership and boundedness ---- */

int arvex_check_membership(const arvex_pencil* p, const arvex_tuple* x, const arvex_options* opts,
                           int* is_member, double* min_eig);

int arvex_pencil_is_bounded(const arvex_pencil* p, const arvex_options* opts, int* bounded);

/* ---- dilation to the Arveson boundary ---- */

int arvex_dilate(const arvex_pencil* p, const arvex_tuple* x, const arvex_options* opts,
                 arvex_trace** out);
void arvex_trace_free(arvex_trace* t);

int arvex_trace_step_count(const arvex_trace* t);
int arvex_trace_dim_before(const arvex_trace* t, int step);
int arvex_trace_dim_after(const arvex_trace* t, int step);
double arvex_trace_scale(const arvex_trace* t, int step);   /* c of the step */
int arvex_trace_final_size(const arvex_trace* t);
int arvex_trace_to_json(const arvex_trace* t, char** out);
int arvex_trace_write(const arvex_trace* t, const char* path);

/* ---- extreme decomposition ---- */

int arvex_decompose(const arvex_pencil* p, const arvex_tuple* x, const arvex_options* opts,
                    arvex_decomposition** out);
int arvex_decomposition_parse(const char* json_text, arvex_decomposition** out);
int arvex_decomposition_read(const char* path, arvex_decomposition** out);
int arvex_decomposition_to_json(const arvex_decomposition* d, char** out);
int arvex_decomposition_write(const arvex_decomposition* d, const char* path);
void arvex_decomposition_free(arvex_decomposition* d);

int arvex_decomposition_component_count(const arvex_decomposition* d);
int arvex_decomposition_component_size(const arvex_decomposition* d, int i);
/* flags: out parameters may be NULL */
int arvex_decomposition_flags(const arvex_decomposition* d, int i, int* irreducible, int* arveson,
                              int* absolute_extreme);
int arvex_decomposition_total_size(const arvex_decomposition* d);
int arvex_decomposition_bound(const arvex_decomposition* d);

/* Re-checks every invariant of a decomposition against the pencil with
 * independent PSD oracles. *ok is 1 when all hold; report (optional)
 * receives a line-per-check text. */
int arvex_verify(const arvex_pencil* p, const arvex_decomposition* d, const arvex_options* opts,
                 int* ok, char** report);

/* ---- instance generation and parameter counts ---- */

/* field: 0 real, 1 complex member. The pencil is always real. */
int arvex_generate(int d, int g, int n, int field, uint64_t seed, arvex_pencil** pencil,
                   arvex_tuple** member);

int arvex_parameter_counts(int n, int g, uint64_t* classical, uint64_t* free_dim);

#ifdef __cplusplus
}
#endif

#endif /* ARVEX_ARVEX_H */
