/* valveuc: unit commitment and economic dispatch with valve-point costs.
 *
 * Every function returning vuc_status leaves a message for vuc_last_error()
 * on failure. Strings returned through char** are owned by the caller and
 * released with vuc_string_free.
 */
#ifndef VALVEUC_H
#define VALVEUC_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define VUC_API __declspec(dllexport)
#else
#define VUC_API __attribute__((visibility("default")))
#endif

typedef enum {
  VUC_OK = 0,
  VUC_E_ARGUMENT = 1,    /* null pointer, bad option value */
  VUC_E_PARSE = 2,       /* malformed document */
  VUC_E_INVALID = 3,     /* instance rejected by validation */
  VUC_E_DOMAIN = 4,      /* value outside a function's domain */
  VUC_E_INFEASIBLE = 5,
  VUC_E_NO_INCUMBENT = 6, /* time limit before any feasible schedule */
  VUC_E_EXTERNAL = 7,    /* external solver failed or disagreed */
  VUC_E_IO = 8,
  VUC_E_INTERNAL = 9
} vuc_status;

typedef enum { VUC_BACKEND_EMBEDDED = 0, VUC_BACKEND_EXTERNAL = 1 } vuc_backend;

typedef enum {
  VUC_SOLVE_OPTIMAL = 0, /* bounds met within tolerance */
  VUC_SOLVE_TIME_LIMIT = 1
} vuc_solve_status;

typedef struct vuc_instance vuc_instance;
typedef struct vuc_result vuc_result;

typedef struct {
  double tolerance;   /* relative, default 1e-7 */
  double time_limit;  /* seconds, <= 0 means none */
  int k_initial;      /* default 2 */
  vuc_backend backend;
  const char* solver_cmd; /* template with {mps} and {sol}; may be null */
  int deterministic;  /* nonzero: trace wall_ms written as 0 */
} vuc_config;

VUC_API const char* vuc_version(void);
VUC_API const char* vuc_last_error(void);
VUC_API void vuc_string_free(char* s);

/* Instances. */
VUC_API vuc_status vuc_instance_parse(const char* text, vuc_instance** out);
VUC_API vuc_status vuc_instance_read(const char* path, vuc_instance** out);
/* Unit records only, forced on for a single period at `load` MW. */
VUC_API vuc_status vuc_instance_dispatch(const char* units_text, double load,
                                         vuc_instance** out);
VUC_API vuc_status vuc_instance_read_dispatch(const char* path, double load,
                                              vuc_instance** out);
/* Truncates or repeats the load profile to `periods`. */
VUC_API vuc_status vuc_instance_with_periods(const vuc_instance* inst,
                                             int periods, vuc_instance** out);
VUC_API void vuc_instance_free(vuc_instance* inst);
VUC_API int vuc_instance_num_units(const vuc_instance* inst);
VUC_API int vuc_instance_num_periods(const vuc_instance* inst);
VUC_API vuc_status vuc_instance_format(const vuc_instance* inst, char** text);

/* Validation report as lines "error <code>: <message>" and
 * "warning <code>: <message>". Counts may be null. */
VUC_API vuc_status vuc_validate(const vuc_instance* inst, char** report,
                                int* num_errors, int* num_warnings);

/* Breakpoints of one unit as CSV "x,y,is_valve". With segments > 0 every
 * inter-valve interval is divided into that many equal parts. */
VUC_API vuc_status vuc_breakpoints_csv(const vuc_instance* inst,
                                       const char* unit_id, int segments,
                                       char** csv);

/* Free-format MPS of the first model of the refinement loop. */
VUC_API vuc_status vuc_export_mps(const vuc_instance* inst, char** mps);

/* Solving. */
VUC_API void vuc_config_default(vuc_config* cfg);
VUC_API vuc_status vuc_solve(const vuc_instance* inst, const vuc_config* cfg,
                             vuc_result** out);
VUC_API void vuc_result_free(vuc_result* res);
VUC_API vuc_solve_status vuc_result_status(const vuc_result* res);
VUC_API double vuc_result_lower_bound(const vuc_result* res);
VUC_API double vuc_result_upper_bound(const vuc_result* res);
VUC_API double vuc_result_relative_error(const vuc_result* res);
VUC_API int vuc_result_iterations(const vuc_result* res);
/* Seconds spent in vuc_solve; 0 with the deterministic option. */
VUC_API double vuc_result_wall_seconds(const vuc_result* res);
VUC_API int vuc_result_commitment(const vuc_result* res, int unit, int period);
VUC_API double vuc_result_dispatch(const vuc_result* res, int unit, int period);
/* Trace CSV: iteration,lb,ub,gap,k_current,total_breakpoints,mip_nodes,wall_ms */
VUC_API vuc_status vuc_result_trace_csv(const vuc_result* res, char** csv);
/* Lines "<unit> <period> <y> <p>" after a "# u t y p" header. */
VUC_API vuc_status vuc_result_solution(const vuc_result* res, char** text);
VUC_API vuc_status vuc_write_file(const char* path, const char* text);

#ifdef __cplusplus
}
#endif

#endif
