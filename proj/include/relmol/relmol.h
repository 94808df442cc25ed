/* Copyright 2026 The relmol Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the relmol library. Every computation returns a status code;
 * on failure the message of the most recent error on the calling thread is
 * available from relmol_last_error(). Results that carry more than one number
 * come back as an opaque relmol_report owned by the caller.
 */

#ifndef RELMOL_RELMOL_H
#define RELMOL_RELMOL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RELMOL_API __declspec(dllexport)
#elif defined(__GNUC__)
#define RELMOL_API __attribute__((visibility("default")))
#else
#define RELMOL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum relmol_status {
  RELMOL_OK = 0,
  RELMOL_ERR_DOMAIN = 1,
  RELMOL_ERR_CONVERGENCE = 2,
  RELMOL_ERR_CRITICAL_COUPLING = 3,
  RELMOL_ERR_PRECONDITION = 4,
  RELMOL_ERR_SINGULAR_POINT = 5,
  RELMOL_ERR_INSUFFICIENT_SIGNAL = 6,
  RELMOL_ERR_INVALID_ARGUMENT = 7,
  RELMOL_ERR_INTERNAL = 8
} relmol_status;

typedef enum relmol_statistics {
  RELMOL_FERMIONIC = 0,
  RELMOL_NO_SYMMETRY = 1
} relmol_statistics;

RELMOL_API const char* relmol_version(void);
RELMOL_API const char* relmol_status_string(relmol_status status);
/* Message of the last failed call on this thread, "" if none. */
RELMOL_API const char* relmol_last_error(void);
/* Last error estimate or residual carried by a convergence failure on this
 * thread, NaN otherwise. */
RELMOL_API double relmol_last_error_estimate(void);

/* ------------------------------------------------------------------------ */
/* Reports */

typedef struct relmol_report relmol_report;

typedef struct relmol_entry {
  const char* id;
  double value;
  int has_exact;
  int64_t exact_num;
  int64_t exact_den;
  const char* formula;
  const char* units;
  const char* note;
  size_t input_count;
} relmol_entry;

typedef struct relmol_input {
  const char* name;
  double value;
  /* Nonzero for a free constant left at its placeholder default. */
  int unset_by_paper;
} relmol_input;

typedef struct relmol_check {
  const char* id;
  int passed;
  double measured;
  double threshold;
  const char* detail;
} relmol_check;

/* Strings returned through these accessors live as long as the report. */
RELMOL_API void relmol_report_free(relmol_report* report);
RELMOL_API const char* relmol_report_title(const relmol_report* report);
RELMOL_API size_t relmol_report_size(const relmol_report* report);
RELMOL_API relmol_status relmol_report_entry(const relmol_report* report, size_t index,
                                             relmol_entry* out);
RELMOL_API relmol_status relmol_report_input(const relmol_report* report, size_t entry,
                                             size_t index, relmol_input* out);
RELMOL_API size_t relmol_report_check_count(const relmol_report* report);
RELMOL_API relmol_status relmol_report_check(const relmol_report* report, size_t index,
                                             relmol_check* out);
/* 1 when every check passed (vacuously for a report without checks). */
RELMOL_API int relmol_report_all_passed(const relmol_report* report);
/* Re-evaluates a closed-form bound entry from its recorded inputs. */
RELMOL_API relmol_status relmol_report_recompute(const relmol_report* report, size_t index,
                                                 double* out);

/* ------------------------------------------------------------------------ */
/* Scalars */

RELMOL_API relmol_status relmol_bessel_k2(double t, double* out);
/* (2 pi)^-2 times the integral of K2(|y|) over R^3, with its quadrature error. */
RELMOL_API relmol_status relmol_k2_mass_integral(double* value, double* error);
RELMOL_API relmol_status relmol_kinetic_symbol(double p, double alpha, double* out);

/* ------------------------------------------------------------------------ */
/* Closed-form bounds */

typedef struct relmol_bounds_params {
  double z1;
  double z2;
  int64_t n;
  double alpha;
  double epsilon;
  double tau;
  /* Constant of the combined trace inequality. */
  double c;
  double c0;
  double c1;
  /* Radius for the trace bound; <= 0 selects the standard choice. */
  double r;
  relmol_statistics statistics;
  /* Nonzero when the caller supplied the constant explicitly. */
  int tau_set;
  int c_set;
  int c0_set;
  int c1_set;
} relmol_bounds_params;

RELMOL_API relmol_bounds_params relmol_bounds_default(void);
RELMOL_API relmol_status relmol_bounds(const relmol_bounds_params* params, relmol_report** out);

typedef struct relmol_theorem2_params {
  double z;
  double alpha;
  double c0;
  double c1;
  double epsilon;
  double tau;
  double z1_fraction;
  /* Scaled TF interaction at scaled separation r; r <= 0 omits it. */
  double tf_interaction;
  double r;
  int constants_set;
} relmol_theorem2_params;

RELMOL_API relmol_theorem2_params relmol_theorem2_default(void);
RELMOL_API relmol_status relmol_theorem2(const relmol_theorem2_params* params,
                                         relmol_report** out);

/* ------------------------------------------------------------------------ */
/* Thomas-Fermi */

typedef struct relmol_tf_atom_params {
  double z;
  double x_min;
  double x_max;
  size_t points;
  double ode_tolerance;
} relmol_tf_atom_params;

RELMOL_API relmol_tf_atom_params relmol_tf_atom_default(void);
RELMOL_API relmol_status relmol_tf_atom(const relmol_tf_atom_params* params, relmol_report** out);

typedef struct relmol_tf_mesh {
  size_t n_sigma;
  size_t n_tau;
  double outer_radius;
  double outer_factor;
  double residual_tolerance;
  size_t max_iterations;
  int estimate_mesh_error;
} relmol_tf_mesh;

RELMOL_API relmol_tf_mesh relmol_tf_mesh_default(void);

typedef struct relmol_tf_diatomic_params {
  double z1;
  double z2;
  double separation;
  relmol_tf_mesh mesh;
} relmol_tf_diatomic_params;

RELMOL_API relmol_tf_diatomic_params relmol_tf_diatomic_default(void);
RELMOL_API relmol_status relmol_tf_diatomic(const relmol_tf_diatomic_params* params,
                                            relmol_report** out);

/* Interaction energies on scaled separations r = Z^{1/3} R, log-spaced over
 * [r_min, r_max], and a log-log fit of their decay. */
typedef struct relmol_tf_fit_params {
  double z1;
  double z2;
  double r_min;
  double r_max;
  size_t r_count;
  relmol_tf_mesh mesh;
} relmol_tf_fit_params;

RELMOL_API relmol_tf_fit_params relmol_tf_fit_default(void);
RELMOL_API relmol_status relmol_tf_fit(const relmol_tf_fit_params* params, relmol_report** out);

typedef struct relmol_scott_params {
  double z1;
  double z2;
  double separation;
  double alpha;
  double c0;
  double c1;
  double epsilon;
  double tau;
  double r0;
  int constants_set;
  /* Scott function samples; table_size == 0 selects the nonrelativistic 1/4. */
  const double* table_gammas;
  const double* table_values;
  size_t table_size;
  relmol_tf_mesh mesh;
} relmol_scott_params;

RELMOL_API relmol_scott_params relmol_scott_default(void);
RELMOL_API relmol_status relmol_scott(const relmol_scott_params* params, relmol_report** out);

/* ------------------------------------------------------------------------ */
/* Relativistic one-electron atom */

typedef struct relmol_herbst_params {
  double z;
  double alpha;
  size_t grid_points;
  double grid_guard;
  double residual_tolerance;
  int estimate_discretization_error;
} relmol_herbst_params;

RELMOL_API relmol_herbst_params relmol_herbst_default(void);
/* Requires Z alpha < 2/pi. */
RELMOL_API relmol_status relmol_herbst_ground(const relmol_herbst_params* params,
                                              relmol_report** out);

/* Dilation scan of a |x|^-beta e^-|x| trial state; defined for every Z alpha. */
typedef struct relmol_dilation_params {
  double z;
  double alpha;
  double beta;
  double lambda_min;
  double lambda_max;
  size_t count;
} relmol_dilation_params;

RELMOL_API relmol_dilation_params relmol_dilation_default(void);
RELMOL_API relmol_status relmol_herbst_scan(const relmol_dilation_params* params,
                                            relmol_report** out);

/* ------------------------------------------------------------------------ */
/* Invariant suites */

/* Number of suite names and the name at index i; the last one is "all". */
RELMOL_API size_t relmol_verify_suite_count(void);
RELMOL_API const char* relmol_verify_suite_name(size_t index);
RELMOL_API relmol_status relmol_verify(const char* suite, uint64_t seed, relmol_report** out);

#ifdef __cplusplus
}
#endif

#endif /* RELMOL_RELMOL_H */
