// Copyright 2026 The cbsearch Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface of the cbsearch solver library. All handles are opaque and
 * owned by the caller; release them with the matching *_free function.
 * Functions returning cbs_status record a message retrievable through
 * cbs_last_error() on the calling thread. */

#ifndef CBSEARCH_H
#define CBSEARCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CBS_API __declspec(dllexport)
#elif defined(__GNUC__)
#define CBS_API __attribute__((visibility("default")))
#else
#define CBS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cbs_status {
  CBS_OK = 0,
  CBS_ERR_INVALID_ARGUMENT = 1,
  CBS_ERR_PARSE = 2,
  CBS_ERR_IO = 3,
  CBS_ERR_UNKNOWN_NAME = 4,
  CBS_ERR_CAP_EXCEEDED = 5,
  CBS_ERR_INTERNAL = 6
} cbs_status;

typedef enum cbs_outcome { CBS_SAT = 0, CBS_UNSAT = 1, CBS_TIMEOUT = 2 } cbs_outcome;

typedef struct cbs_instance cbs_instance;
typedef struct cbs_model cbs_model;
typedef struct cbs_result cbs_result;
typedef struct cbs_densities cbs_densities;
typedef struct cbs_exact cbs_exact;

CBS_API const char* cbs_version(void);
CBS_API const char* cbs_last_error(void);
CBS_API const char* cbs_status_name(cbs_status status);

/* Comma separated lists of the accepted names. */
CBS_API const char* cbs_heuristic_names(void);
CBS_API const char* cbs_problem_kinds(void);
/* 1 when the heuristic draws from the random stream, 0 when not, -1 when unknown. */
CBS_API int cbs_heuristic_is_randomized(const char* name);

/* Strings returned through char** are released with cbs_string_free. */
CBS_API void cbs_string_free(char* s);

/* ---- instances ---- */

typedef struct cbs_generate_params {
  int n;           /* 0 selects the kind default */
  int m;
  double holes;    /* qwh */
  double prefill;  /* magic */
  double density;  /* nonogram */
  double preset;   /* rostering */
  double removed;  /* rostering */
  int forbidden;   /* kprostering */
  int balanced;    /* ttppv */
} cbs_generate_params;

CBS_API void cbs_generate_params_default(cbs_generate_params* params);

/* kind may be NULL for cbs_instance_read, which then uses the file extension. */
CBS_API cbs_status cbs_instance_read(const char* path, const char* kind, cbs_instance** out);
CBS_API cbs_status cbs_instance_parse(const char* text, const char* kind, const char* name, cbs_instance** out);
CBS_API cbs_status cbs_instance_generate(const char* kind, const cbs_generate_params* params, uint64_t seed,
                                         cbs_instance** out);
CBS_API void cbs_instance_free(cbs_instance* inst);

CBS_API const char* cbs_instance_name(const cbs_instance* inst);
CBS_API const char* cbs_instance_kind(const cbs_instance* inst);
CBS_API const char* cbs_instance_extension(const cbs_instance* inst);
/* 1 sat, 0 unsat, -1 unknown. */
CBS_API int cbs_instance_known_status(const cbs_instance* inst);
CBS_API cbs_status cbs_instance_write(const cbs_instance* inst, char** text);
CBS_API cbs_status cbs_instance_save(const cbs_instance* inst, const char* path);
/* Sets *ok to 1 when values (one per model variable) solve the instance. */
CBS_API cbs_status cbs_instance_check(const cbs_instance* inst, const int* values, size_t count, int* ok);

/* ---- models ---- */

typedef struct cbs_model_options {
  const char* consistency;    /* "fc", "bounds", "domain"; NULL means domain */
  const char* knapsack_mode;  /* "exact", "gaussian"; NULL means exact */
  int exact_moments;
} cbs_model_options;

CBS_API cbs_status cbs_model_build(const cbs_instance* inst, const cbs_model_options* options, cbs_model** out);
CBS_API void cbs_model_free(cbs_model* model);

CBS_API int cbs_model_num_vars(const cbs_model* model);
CBS_API int cbs_model_num_constraints(const cbs_model* model);
CBS_API const char* cbs_model_constraint_kind(const cbs_model* model, int constraint);
/* Size of a variable's current domain; values copied when buffer is non-NULL. */
CBS_API cbs_status cbs_model_domain(const cbs_model* model, int var, int* buffer, size_t capacity, size_t* size);
/* Root propagation. *consistent is 0 after a wipeout. */
CBS_API cbs_status cbs_model_propagate(cbs_model* model, int* consistent);

/* ---- search ---- */

typedef struct cbs_solve_options {
  const char* heuristic;  /* NULL means maxSD */
  const char* traversal;  /* "dfs", "restart", "lds"; NULL means dfs */
  double restart_scale;
  int lds_skip;
  double timeout_s;
  uint64_t max_backtracks;  /* 0 means unlimited */
  uint64_t seed;
} cbs_solve_options;

CBS_API void cbs_solve_options_default(cbs_solve_options* options);
CBS_API cbs_status cbs_solve(cbs_model* model, const cbs_solve_options* options, cbs_result** out);
CBS_API void cbs_result_free(cbs_result* result);

CBS_API cbs_outcome cbs_result_outcome(const cbs_result* result);
CBS_API const char* cbs_result_status(const cbs_result* result);
CBS_API uint64_t cbs_result_backtracks(const cbs_result* result);
CBS_API uint64_t cbs_result_nodes(const cbs_result* result);
CBS_API double cbs_result_time_ms(const cbs_result* result);
CBS_API int cbs_result_restarts(const cbs_result* result);
CBS_API int cbs_result_waves(const cbs_result* result);
CBS_API int cbs_result_discrepancies(const cbs_result* result);
/* Empty unless the outcome is CBS_SAT. */
CBS_API const int* cbs_result_solution(const cbs_result* result, size_t* count);
/* Returns 0 when no decision was taken. *assign is 1 for x = v, 0 for x != v. */
CBS_API int cbs_result_first_decision(const cbs_result* result, int* var, int* value, int* assign);

/* ---- solution densities ---- */

/* Tables of every counting constraint after root propagation. */
CBS_API cbs_status cbs_model_densities(cbs_model* model, cbs_densities** out);
CBS_API void cbs_densities_free(cbs_densities* d);
CBS_API size_t cbs_densities_num_tables(const cbs_densities* d);
CBS_API cbs_status cbs_densities_table(const cbs_densities* d, size_t table, int* constraint, double* log_count,
                                       int* exact, size_t* num_entries);
CBS_API cbs_status cbs_densities_entry(const cbs_densities* d, size_t table, size_t entry, int* var, int* value,
                                       double* density);

/* Exhaustive count and rational densities of one constraint over the current
 * domains. Refuses with CBS_ERR_CAP_EXCEEDED above cap candidate tuples. */
CBS_API cbs_status cbs_model_exact_table(const cbs_model* model, int constraint, uint64_t cap, cbs_exact** out);
CBS_API void cbs_exact_free(cbs_exact* e);
CBS_API const char* cbs_exact_count(const cbs_exact* e);
CBS_API size_t cbs_exact_num_entries(const cbs_exact* e);
/* numerator and denominator are decimal strings owned by the handle. */
CBS_API cbs_status cbs_exact_entry(const cbs_exact* e, size_t entry, int* var, int* value, const char** numerator,
                                   const char** denominator, double* density);

/* Exhaustive solution count of the whole model; the count is a decimal string. */
CBS_API cbs_status cbs_model_exact_solve(const cbs_model* model, uint64_t cap, int* sat, char** count);

#ifdef __cplusplus
}
#endif

#endif /* CBSEARCH_H */
