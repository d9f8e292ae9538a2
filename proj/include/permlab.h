#ifndef PERMLAB_H
#define PERMLAB_H

/* C interface to the permlab library.
 *
 * Every fallible call returns a permlab_status; on failure the message is
 * available from permlab_last_error() on the same thread until the next call.
 * Strings handed out through char** parameters are owned by the caller and
 * released with permlab_free_string. Rationals travel as "p/q" text. */

#include <stddef.h>

#if defined(_WIN32)
#define PERMLAB_API __declspec(dllexport)
#else
#define PERMLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PERMLAB_OK = 0,
  PERMLAB_INVALID_ARGUMENT = 1, /* null pointer, unknown name */
  PERMLAB_DIMENSION = 2,
  PERMLAB_PRECONDITION = 3,
  PERMLAB_GUARD = 4,
  PERMLAB_INFEASIBLE = 5,
  PERMLAB_PARSE = 6,
  PERMLAB_IO = 7,
  PERMLAB_INTERNAL = 8
} permlab_status;

typedef enum { PERMLAB_NAIVE = 0, PERMLAB_RYSER = 1, PERMLAB_GRAY = 2 } permlab_method;

typedef struct permlab_matrix permlab_matrix;
typedef struct permlab_search_config permlab_search_config;

PERMLAB_API const char* permlab_version(void);
PERMLAB_API const char* permlab_status_string(permlab_status status);
PERMLAB_API const char* permlab_last_error(void);
PERMLAB_API void permlab_free_string(char* s);

/* Matrices. Text format: n, then n rows of n rational tokens. */
PERMLAB_API permlab_status permlab_matrix_parse(const char* text, permlab_matrix** out);
PERMLAB_API permlab_status permlab_matrix_load(const char* path, permlab_matrix** out);
PERMLAB_API permlab_status permlab_matrix_from_json(const char* json, permlab_matrix** out);
/* n*n row-major rational tokens. */
PERMLAB_API permlab_status permlab_matrix_from_entries(size_t n, const char* const* entries, permlab_matrix** out);
PERMLAB_API void permlab_matrix_free(permlab_matrix* m);
PERMLAB_API size_t permlab_matrix_order(const permlab_matrix* m);
PERMLAB_API permlab_status permlab_matrix_entry(const permlab_matrix* m, size_t i, size_t j, char** out);
PERMLAB_API permlab_status permlab_matrix_to_text(const permlab_matrix* m, char** out);
PERMLAB_API permlab_status permlab_matrix_to_json(const permlab_matrix* m, char** out);
PERMLAB_API permlab_status permlab_classify_json(const permlab_matrix* m, char** out);

/* Permanents. With i_minus nonzero the evaluated matrix is I - A. */
PERMLAB_API permlab_status permlab_permanent(const permlab_matrix* m, permlab_method method, int i_minus, char** out);
PERMLAB_API permlab_status permlab_permanent_float(const permlab_matrix* m, int i_minus, double* out);
PERMLAB_API permlab_status permlab_permanent_json(const permlab_matrix* m, permlab_method method, int i_minus,
                                                  char** out);
PERMLAB_API permlab_status permlab_ryser_trace_json(const permlab_matrix* m, int i_minus, char** out);
PERMLAB_API permlab_status permlab_determinant(const permlab_matrix* m, int i_minus, char** out);
PERMLAB_API permlab_status permlab_sign_structure_json(const permlab_matrix* m, char** out);

/* Transforms. preserve is "row" or "doubly". */
PERMLAB_API permlab_status permlab_epsilon_shift(const permlab_matrix* m, size_t i, size_t j, const char* eps,
                                                 permlab_matrix** out);
PERMLAB_API permlab_status permlab_zero_diagonalize_json(const permlab_matrix* m, const char* preserve, char** out);
PERMLAB_API permlab_status permlab_concentrate_json(const permlab_matrix* m, char** out);
PERMLAB_API permlab_status permlab_pair_up(const permlab_matrix* m, permlab_matrix** out);

/* Functional digraphs. */
PERMLAB_API permlab_status permlab_decompose_json(const permlab_matrix* m, char** out);
PERMLAB_API permlab_status permlab_per_via_cycles(const permlab_matrix* m, char** out);

/* Bounds and constructions.
 * bound kinds: "theorem", "malek", "subdefect" (uses k), "rowsub_odd".
 * construct kinds: "extremal", "rowsub_odd", "omega3_a0", "omega3_a1", "circulant3" (s is x).
 * conjecture kinds: "odd_stochastic", "omega3", "odd_substochastic". */
PERMLAB_API permlab_status permlab_bound_json(const char* kind, size_t n, const char* s, long k, char** out);
PERMLAB_API permlab_status permlab_construct(const char* kind, size_t n, const char* s, permlab_matrix** out);
PERMLAB_API permlab_status permlab_conjecture_json(const char* kind, size_t n, const char* s, char** out);
PERMLAB_API permlab_status permlab_labeling_bound_json(const permlab_matrix* m, char** out);

/* Search. A config document may omit any key except n. threads == 0 uses
 * every available core. */
PERMLAB_API permlab_status permlab_search_config_parse(const char* json, permlab_search_config** out);
PERMLAB_API permlab_status permlab_search_config_default(size_t n, double s, permlab_search_config** out);
PERMLAB_API void permlab_search_config_free(permlab_search_config* c);
PERMLAB_API permlab_status permlab_search_config_to_json(const permlab_search_config* c, char** out);
PERMLAB_API permlab_status permlab_search_run(const permlab_search_config* c, unsigned threads, char** out);
PERMLAB_API permlab_status permlab_exhaustive_omega3_json(double s, double grid_step, char** out);
/* base may be null for the default budget. */
PERMLAB_API permlab_status permlab_evidence_json(size_t n, const double* s_values, size_t count,
                                                 const permlab_search_config* base, unsigned threads, char** out);

/* Runs the built-in invariant suite. failures receives the failing case count. */
PERMLAB_API permlab_status permlab_verify_json(char** out, size_t* failures);

#ifdef __cplusplus
}
#endif

#endif /* PERMLAB_H */
