/* C interface to the ektau library: homogeneous spaces E(kappa, tau), model
 * surfaces, Jacobi-field propagation and the verification suite.
 *
 * Every function returns an ekt_status. On failure, ekt_last_error() returns a
 * message for the calling thread; it stays valid until the next failing call.
 * Handles are opaque and must be released with the matching destroy call.
 * Arrays are row-major.
 */
#ifndef EKTAU_H
#define EKTAU_H

#include <stddef.h>
#include <stdint.h>

#if defined(EKTAU_BUILDING_LIBRARY)
#define EKTAU_API __attribute__((visibility("default")))
#else
#define EKTAU_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  EKT_OK = 0,
  EKT_ERR_PARAMETER = 1,
  EKT_ERR_DOMAIN = 2,
  EKT_ERR_USAGE = 3,
  EKT_ERR_IMMERSION = 4,
  EKT_ERR_UMBILIC = 5,
  EKT_ERR_FOCAL = 6,
  EKT_ERR_ESCAPE = 7,
  EKT_ERR_CONSISTENCY = 8,
  EKT_ERR_IO = 9,
  EKT_ERR_NULL = 10,
  EKT_ERR_INTERNAL = 11
} ekt_status;

typedef enum {
  EKT_FAMILY_CYLINDER = 0,
  EKT_FAMILY_SLICE = 1,
  EKT_FAMILY_S = 2,
  EKT_FAMILY_C = 3,
  EKT_FAMILY_P = 4,
  EKT_FAMILY_PERTURBED_SLICE = 5
} ekt_family;

typedef enum {
  EKT_CLASS_CYLINDER = 0,
  EKT_CLASS_SLICE = 1,
  EKT_CLASS_PARABOLIC_HELICOID = 2,
  EKT_CLASS_NOT_ISOPARAMETRIC = 3,
  EKT_CLASS_UNCLASSIFIED = 4
} ekt_class;

typedef struct ekt_space ekt_space;
typedef struct ekt_surface ekt_surface;

EKTAU_API const char* ekt_last_error(void);
EKTAU_API const char* ekt_status_name(ekt_status status);

/* ---- ambient space ---- */

/* halfspace != 0 selects the upper-halfspace chart (kappa < 0 only). */
EKTAU_API ekt_status ekt_space_create(double kappa, double tau, int halfspace, ekt_space** out);
EKTAU_API void ekt_space_destroy(ekt_space* space);
EKTAU_API ekt_status ekt_space_metric(const ekt_space* space, const double p[3], double g[9]);
/* gamma[k * 9 + i * 3 + j] = Gamma^k_ij */
EKTAU_API ekt_status ekt_space_christoffel(const ekt_space* space, const double p[3], double gamma[27]);
EKTAU_API ekt_status ekt_space_curvature(const ekt_space* space, const double p[3], const double x[3],
                                         const double y[3], const double z[3], double out[3]);
EKTAU_API ekt_status ekt_space_cross(const ekt_space* space, const double p[3], const double u[3],
                                     const double v[3], double out[3]);
/* On EKT_ERR_ESCAPE, *exit_t (if non-null) receives the time the path left the chart. */
EKTAU_API ekt_status ekt_geodesic_flow(const ekt_space* space, const double p[3], const double v[3],
                                       double t, double step, double p_out[3], double v_out[3],
                                       double* exit_t);

/* ---- model surfaces ---- */

typedef struct {
  ekt_family family;
  double H;
  double kappa;
  double tau;
  double t0;        /* slice height */
  double margin;    /* endpoint truncation for S and C */
  int branch;       /* sign branch of the C family */
  double amplitude; /* perturbed slice */
} ekt_surface_params;

EKTAU_API void ekt_surface_params_default(ekt_surface_params* params);
/* Accepts cylinder, slice, S, C, P, graph (case-insensitive). */
EKTAU_API ekt_status ekt_family_parse(const char* name, ekt_family* out);
EKTAU_API const char* ekt_family_name(ekt_family family);
EKTAU_API ekt_status ekt_surface_create(const ekt_surface_params* params, ekt_surface** out);
EKTAU_API void ekt_surface_destroy(ekt_surface* surface);
/* domain = {u0, u1, v0, v1} */
EKTAU_API ekt_status ekt_surface_domain(const ekt_surface* surface, double domain[4]);

typedef struct {
  double u, v;
  double point[3];
  double normal[3];
  double shape[4]; /* shape operator in the frame E1 = X_u/|X_u|, E2 = E1 ^ N */
  double H, K, nu, q, k1, k2;
  double T1, T2;
} ekt_sample;

EKTAU_API ekt_status ekt_surface_sample(const ekt_surface* surface, double u, double v, ekt_sample* out);
EKTAU_API ekt_status ekt_surface_normal_exponential(const ekt_surface* surface, double u, double v,
                                                    double r, double out[3]);
EKTAU_API ekt_status ekt_surface_classify(const ekt_surface* surface, int nu, int nv, ekt_class* out);
EKTAU_API const char* ekt_class_name(ekt_class label);

/* ---- Jacobi fields and parallel surfaces ---- */

typedef struct {
  double a11, a12, a22;
  double nu;
  double delta;
  double tau;
} ekt_jacobi;

EKTAU_API ekt_status ekt_jacobi_make(double kappa, double tau, double nu, double a11, double a12,
                                     double a22, ekt_jacobi* out);
EKTAU_API ekt_status ekt_surface_jacobi(const ekt_surface* surface, double u, double v, ekt_jacobi* out);
EKTAU_API ekt_status ekt_jacobi_B(const ekt_jacobi* jd, double r, double B[4]);
EKTAU_API ekt_status ekt_jacobi_C(const ekt_jacobi* jd, double r, double C[4]);
EKTAU_API ekt_status ekt_jacobi_parallel_shape(const ekt_jacobi* jd, double r, double A[4]);
EKTAU_API ekt_status ekt_jacobi_mean(const ekt_jacobi* jd, double r, double* h);

/* out = {H*, kappa*, tau*} */
EKTAU_API ekt_status ekt_sister_parameters(double H, double kappa, double tau, double out[3]);

/* ---- reports ---- */

/* A null path or "-" writes to standard output. */
EKTAU_API ekt_status ekt_write_sample_csv(const ekt_surface* surface, int nu, int nv, const char* path);
EKTAU_API ekt_status ekt_write_parallel_csv(const ekt_surface* surface, int nu, int nv,
                                            const double* radii, size_t n_radii, const char* path);

typedef struct {
  uint64_t seed;
  int grid_nu, grid_nv;
  const double* radii; /* null keeps the default radii */
  size_t n_radii;
  const char* const* tol_keys;
  const double* tol_values;
  size_t n_tol;
  const char* only;   /* null or empty: full suite */
  const char* family; /* null or empty: all families */
  double margin;
} ekt_verify_options;

EKTAU_API void ekt_verify_options_default(ekt_verify_options* options);
/* Writes the JSON report to json_path. all_pass and n_checks may be null. */
EKTAU_API ekt_status ekt_run_verification(const ekt_verify_options* options, const char* json_path,
                                          int* all_pass, int* n_checks);

#ifdef __cplusplus
}
#endif

#endif /* EKTAU_H */
