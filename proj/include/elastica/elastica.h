/*
 * elastica - Sobolev gradient flow for the modified elastic energy on
 * closed curves. C API: opaque handles, status codes, no exceptions
 * across the boundary. All functions that can fail return ela_status;
 * ela_last_error() describes the most recent failure on this thread.
 */

#ifndef ELASTICA_ELASTICA_H
#define ELASTICA_ELASTICA_H

#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

typedef enum ela_status {
  ELA_OK = 0,
  ELA_ERR_INVALID_ARGUMENT = 1,
  ELA_ERR_NON_IMMERSED = 2,
  ELA_ERR_SINGULAR = 3,
  ELA_ERR_IO = 4,
  ELA_ERR_PARSE = 5,
  ELA_ERR_INSUFFICIENT_TAIL = 6,
  ELA_ERR_INTERNAL = 7
} ela_status;

typedef enum ela_backend_kind {
  ELA_BACKEND_KERNEL = 0, /* O(N^2) Green's-kernel quadrature */
  ELA_BACKEND_WEAK = 1    /* trigonometric Gram solve */
} ela_backend_kind;

typedef enum ela_integrator_kind {
  ELA_INTEGRATOR_RK4 = 0,
  ELA_INTEGRATOR_RK45 = 1
} ela_integrator_kind;

typedef enum ela_terminal_kind {
  ELA_TERMINAL_CONVERGED = 0,
  ELA_TERMINAL_TIME_LIMIT = 1,
  ELA_TERMINAL_STEP_FAILURE = 2
} ela_terminal_kind;

typedef enum ela_limit_class {
  ELA_LIMIT_CIRCLE = 0,
  ELA_LIMIT_FIGURE_EIGHT = 1,
  ELA_LIMIT_UNCLASSIFIED = 2
} ela_limit_class;

const char* ela_version(void);
/* Message for the most recent error on the calling thread. */
const char* ela_last_error(void);

/* ---- curves ---------------------------------------------------------- */

typedef struct ela_curve ela_curve;

ela_status ela_curve_make_circle(double radius, int folds, int n, int dim, ela_curve** out);
ela_status ela_curve_make_ellipse(double a, double b, int n, int dim, ela_curve** out);
ela_status ela_curve_make_figure_eight(double scale, int n, int dim, ela_curve** out);
ela_status ela_curve_make_fourier(uint64_t seed, double decay, int n, int dim, ela_curve** out);

ela_status ela_curve_load(const char* path, ela_curve** out);
ela_status ela_curve_save(const ela_curve* curve, const char* path);

int ela_curve_dim(const ela_curve* curve);
int ela_curve_samples(const ela_curve* curve);
/* Copies N*dim doubles, row-major by sample. */
ela_status ela_curve_points(const ela_curve* curve, double* buffer);
ela_status ela_curve_centroid(const ela_curve* curve, double* buffer);
/* Arc-length-proportional reparametrisation of the same image. */
ela_status ela_curve_project_arclength(const ela_curve* curve, ela_curve** out);
/* Per-sample speed |gamma'(u_j)| (N doubles). */
ela_status ela_curve_speed(const ela_curve* curve, double* buffer);
void ela_curve_free(ela_curve* curve);

/* ---- energy and gradients -------------------------------------------- */

ela_status ela_energy(const ela_curve* curve, double lambda, double* out);
ela_status ela_curve_length(const ela_curve* curve, double* out);
/* H^2(ds) norm of the Sobolev gradient via the chosen backend. */
ela_status ela_grad_norm(const ela_curve* curve, double lambda, ela_backend_kind backend,
                         double* out);
/* L^2(ds) norm of the Euler-Lagrange residual (stationarity certificate). */
ela_status ela_el_residual_norm(const ela_curve* curve, double lambda, double* out);

/* ---- flow ------------------------------------------------------------ */

typedef struct ela_flow_options {
  double lambda;
  ela_backend_kind backend;
  ela_integrator_kind integrator;
  double dt;       /* fixed step, or initial adaptive step */
  double rel_tol;
  double abs_tol;
  double dt_min;
  double dt_max;
  double grad_tol; /* stopping tolerance on ||grad||_{H^2(ds)} */
  double t_max;
  int snapshot_stride;
} ela_flow_options;

void ela_flow_options_init(ela_flow_options* opts);

typedef struct ela_trajectory ela_trajectory;

typedef struct ela_flow_record {
  double t;
  double energy;
  double grad_norm;
  double dt;
  double cum_length;
} ela_flow_record;

ela_status ela_flow_run(const ela_curve* curve, const ela_flow_options* opts,
                        ela_trajectory** out);
/* Explicit L^2(ds) flow baseline; StepFailure terminals are expected data. */
ela_status ela_l2_flow_run(const ela_curve* curve, double lambda, double dt, double t_max,
                           ela_trajectory** out);

long ela_trajectory_record_count(const ela_trajectory* traj);
ela_status ela_trajectory_record(const ela_trajectory* traj, long index, ela_flow_record* out);
long ela_trajectory_snapshot_count(const ela_trajectory* traj);
ela_status ela_trajectory_snapshot(const ela_trajectory* traj, long index, double* t,
                                   ela_curve** curve);
ela_terminal_kind ela_trajectory_terminal(const ela_trajectory* traj);
ela_status ela_trajectory_final_curve(const ela_trajectory* traj, ela_curve** out);
ela_status ela_trajectory_save(const ela_trajectory* traj, const char* path);
ela_status ela_trajectory_load(const char* path, ela_trajectory** out);
void ela_trajectory_free(ela_trajectory* traj);

/* Fixed-step survival probe for the stiffness benchmark. */
typedef struct ela_stability_row {
  double dt;
  long survived_steps;
  double final_energy;
  int survived; /* reached the full step budget */
} ela_stability_row;

ela_status ela_stability_probe(const ela_curve* curve, double lambda, int h2_flow,
                               ela_backend_kind backend, double dt, long max_steps,
                               ela_stability_row* out);

/* ---- diagnostics ------------------------------------------------------ */

typedef struct ela_loja_fit {
  double theta;
  double z;
  double residual;
  double e_inf;
  double t_start;
  double t_end;
  int points;
  int reliable;
} ela_loja_fit;

ela_status ela_fit_lojasiewicz(const ela_trajectory* traj, ela_loja_fit* out);

typedef struct ela_limit_report {
  ela_limit_class classification;
  double radius;
  int multiplicity;
  int rotation_index;
  int rotation_valid;
  double curvature_mean;
  double curvature_std;
  double stationarity_norm;
} ela_limit_report;

ela_status ela_classify_limit(const ela_curve* curve, double lambda, ela_limit_report* out);

typedef struct ela_invariance_report {
  double translation_energy_rel;
  double translation_grad_rel;
  double diffeo_energy_rel;
  double diffeo_grad_rel;
} ela_invariance_report;

/* translation must hold dim doubles. */
ela_status ela_invariance_audit(const ela_curve* curve, double lambda, uint64_t diffeo_seed,
                                const double* translation, ela_backend_kind backend,
                                ela_invariance_report* out);

#if defined(__cplusplus)
} /* extern "C" */
#endif

#endif /* ELASTICA_ELASTICA_H */
