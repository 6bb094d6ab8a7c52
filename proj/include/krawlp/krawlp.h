#ifndef KRAWLP_KRAWLP_H
#define KRAWLP_KRAWLP_H

/*
 * C interface to the krawlp library.
 *
 * Every call returns a krawlp_status. On failure, krawlp_last_error() describes
 * the problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** are heap-allocated; release them with
 * krawlp_string_free. Handles are released with their matching *_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(KRAWLP_BUILDING_LIBRARY)
#define KRAWLP_API __attribute__((visibility("default")))
#else
#define KRAWLP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum krawlp_status {
  KRAWLP_OK = 0,
  KRAWLP_ERR_INVALID_INPUT = 1,
  KRAWLP_ERR_NOT_A_CONFIG = 2,
  KRAWLP_ERR_NOT_LINEAR = 3,
  KRAWLP_ERR_CAPACITY = 4,
  KRAWLP_ERR_RESOURCE = 5,
  KRAWLP_ERR_DOMAIN = 6,
  KRAWLP_ERR_IO = 7,
  KRAWLP_ERR_INTERNAL = 8
} krawlp_status;

typedef enum krawlp_lp_format { KRAWLP_FORMAT_LP = 0, KRAWLP_FORMAT_JSON = 1 } krawlp_lp_format;

typedef enum krawlp_solve_mode { KRAWLP_SOLVE_EXACT = 0, KRAWLP_SOLVE_FLOAT = 1 } krawlp_solve_mode;

typedef enum krawlp_solve_status {
  KRAWLP_OPTIMAL = 0,
  KRAWLP_INFEASIBLE = 1,
  KRAWLP_UNBOUNDED = 2
} krawlp_solve_status;

typedef struct krawlp_table krawlp_table;
typedef struct krawlp_lp krawlp_lp;
typedef struct krawlp_solution krawlp_solution;

KRAWLP_API const char* krawlp_version(void);
KRAWLP_API const char* krawlp_last_error(void);
KRAWLP_API const char* krawlp_status_name(krawlp_status status);
KRAWLP_API void krawlp_string_free(char* s);

/* Configurations. The count is a decimal string (it can exceed 64 bits). */
KRAWLP_API krawlp_status krawlp_config_count(int n, int l, char** count);
/* JSON array of {"index","n","l","venn","sd","orbit"} in canonical order. */
KRAWLP_API krawlp_status krawlp_configs_json(int n, int l, char** json);

/* Krawtchouk tables. Honours KRAWLP_CACHE_DIR when set. */
KRAWLP_API krawlp_status krawlp_table_build(int n, int l, krawlp_table** out);
KRAWLP_API size_t krawlp_table_size(const krawlp_table* table);
KRAWLP_API krawlp_status krawlp_table_entry(const krawlp_table* table, size_t h, size_t g, char** value);
KRAWLP_API krawlp_status krawlp_table_csv(const krawlp_table* table, char** csv);
KRAWLP_API void krawlp_table_free(krawlp_table* table);

/* Linear programs. */
KRAWLP_API krawlp_status krawlp_lp_delsarte(int n, int d, krawlp_lp** out);
KRAWLP_API krawlp_status krawlp_lp_hierarchy(int n, int d, int l, int linear, krawlp_lp** out);
KRAWLP_API krawlp_status krawlp_lp_fourier(int n, int d, int l, int linear, krawlp_lp** out);
KRAWLP_API krawlp_status krawlp_lp_from_json(const char* json, krawlp_lp** out);
KRAWLP_API krawlp_status krawlp_lp_export(const krawlp_lp* lp, krawlp_lp_format format, char** text);
KRAWLP_API krawlp_status krawlp_lp_dims(const krawlp_lp* lp, size_t* variables, size_t* rows);
KRAWLP_API void krawlp_lp_free(krawlp_lp* lp);

/* Solving. */
KRAWLP_API krawlp_status krawlp_solve(const krawlp_lp* lp, krawlp_solve_mode mode, krawlp_solution** out);
KRAWLP_API krawlp_solve_status krawlp_solution_status(const krawlp_solution* sol);
/* Exact value as a fraction string. */
KRAWLP_API krawlp_status krawlp_solution_value(const krawlp_solution* sol, char** value);
/* value^(1/l), rounded down onto the double grid. */
KRAWLP_API krawlp_status krawlp_solution_root(const krawlp_solution* sol, double* root);
KRAWLP_API krawlp_status krawlp_solution_json(const krawlp_solution* sol, char** json);
KRAWLP_API void krawlp_solution_free(krawlp_solution* sol);

/* Largest (linear) code of length n and distance >= d, with a witness, as JSON.
 * Honours KRAWLP_CACHE_DIR when set. */
KRAWLP_API krawlp_status krawlp_oracle(int n, int d, int linear, char** json);

/* Property suites at (n, l); or the acceptance grid when `acceptance` is
 * nonzero (n and l ignored). `violations` receives the number of failed checks
 * plus the number of suites over their time limit. */
KRAWLP_API krawlp_status krawlp_verify(int n, int l, int acceptance, char** report_json, size_t* violations);

#ifdef __cplusplus
}
#endif

#endif
