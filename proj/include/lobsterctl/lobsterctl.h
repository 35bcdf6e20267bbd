/* C interface to the lobsterctl controllability toolkit.
 *
 * Every fallible call returns an lc_status. On failure, lc_last_error()
 * returns a message for the calling thread that stays valid until that
 * thread's next failing call. Strings handed out through char** parameters
 * are owned by the caller and released with lc_string_free(). Vertex ids are
 * 1-based.
 */
#ifndef LOBSTERCTL_H
#define LOBSTERCTL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LOBSTERCTL_BUILDING)
#    define LOBSTERCTL_API __declspec(dllexport)
#  else
#    define LOBSTERCTL_API __declspec(dllimport)
#  endif
#else
#  define LOBSTERCTL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lc_status {
  LC_OK = 0,
  LC_ERR_INVALID_ARGUMENT = 1,
  LC_ERR_PARSE = 2,
  LC_ERR_IO = 3,
  LC_ERR_NOT_TREE = 4,
  LC_ERR_NOT_LOBSTER = 5,
  LC_ERR_NOT_CONNECTED = 6,
  LC_ERR_LIMIT = 7,
  LC_ERR_NUMERICAL = 8,
  LC_ERR_INTERNAL = 9
} lc_status;

typedef struct lc_graph lc_graph;

LOBSTERCTL_API const char* lc_version(void);
LOBSTERCTL_API const char* lc_status_name(lc_status status);
LOBSTERCTL_API const char* lc_last_error(void);
LOBSTERCTL_API void lc_string_free(char* s);

/* Graphs: JSON {"n":..,"edges":[[i,j],..]} or undirected DOT. */
LOBSTERCTL_API lc_status lc_graph_parse(const char* text, lc_graph** out);
LOBSTERCTL_API lc_status lc_graph_load(const char* path, lc_graph** out);
/* edges holds 2*edge_count ids: i0, j0, i1, j1, ... */
LOBSTERCTL_API lc_status lc_graph_from_edges(int n, const int* edges, size_t edge_count, lc_graph** out);
LOBSTERCTL_API void lc_graph_free(lc_graph* g);
LOBSTERCTL_API int lc_graph_vertex_count(const lc_graph* g);
LOBSTERCTL_API size_t lc_graph_edge_count(const lc_graph* g);
LOBSTERCTL_API lc_status lc_graph_to_json(const lc_graph* g, char** out_json);
/* Row-major n*n Laplacian into a caller buffer of `capacity` entries. */
LOBSTERCTL_API lc_status lc_graph_laplacian(const lc_graph* g, int64_t* out, size_t capacity);

/* Lobsters: {"spine_len":n,"attach":[[..],..]}. */
LOBSTERCTL_API lc_status lc_lobster_random(int spine_len, uint64_t seed, int max_load, char** out_spec_json);
LOBSTERCTL_API lc_status lc_lobster_build(const char* spec_json, lc_graph** out);

typedef enum lc_method { LC_METHOD_PBH = 0, LC_METHOD_EXACT = 1 } lc_method;

/* out_rank receives the Kalman rank for LC_METHOD_EXACT, -1 otherwise.
 * out_json (optional) receives the full verdict. */
LOBSTERCTL_API lc_status lc_analyze(const lc_graph* g, const int* leaders, size_t leader_count, lc_method method,
                                    int* out_controllable, int* out_rank, char** out_json);

typedef enum lc_mpcs_source {
  LC_MPCS_BRUTE = 0,  /* exhaustive, n <= 16 */
  LC_MPCS_DETECT = 1  /* structural detectors */
} lc_mpcs_source;

/* JSON array [{"vertices":[..],"kind":"MPCS","origin":"twin","lambda":1.0,..}]. */
LOBSTERCTL_API lc_status lc_mpcs_catalog(const lc_graph* g, lc_mpcs_source source, char** out_json,
                                         size_t* out_count);

typedef enum lc_csa_mode { LC_CSA_HITTING_SET = 0, LC_CSA_PER_SET = 1 } lc_csa_mode;

typedef struct lc_csa_options {
  lc_csa_mode mode;
  int has_seed;
  uint64_t seed;
  int strict_step6;
  int enable_step6;
  int certify_limit;
} lc_csa_options;

LOBSTERCTL_API void lc_csa_options_init(lc_csa_options* options);
/* out_found is 1 for status "found", 0 for "cant_find". */
LOBSTERCTL_API lc_status lc_csa_run(const lc_graph* g, const lc_csa_options* options, int* out_found,
                                    char** out_json);

/* Exhaustive minimum leader search (n <= 25) plus the chance that a uniformly
 * drawn k_min-subset is one of the minimum leader sets. */
LOBSTERCTL_API lc_status lc_min_leaders(const lc_graph* g, int k_max, char** out_json);
LOBSTERCTL_API lc_status lc_count_to_probability(uint64_t count, int n, int k, double* out_value,
                                                 char** out_rendered);

typedef enum lc_sweep { LC_SWEEP_SUCCESS = 0, LC_SWEEP_SCALING = 1, LC_SWEEP_PROPORTION = 2 } lc_sweep;

/* Runs a sweep described by a JSON config. jobs <= 0 keeps the config value.
 * out_summary_json (optional) carries fits and flags; out_svg (optional) a
 * plot of the sweep's metric. */
LOBSTERCTL_API lc_status lc_experiment_run(const char* config_json, lc_sweep sweep, int ablate_step6, int jobs,
                                           char** out_csv, char** out_summary_json, char** out_svg);

#ifdef __cplusplus
}
#endif

#endif /* LOBSTERCTL_H */
