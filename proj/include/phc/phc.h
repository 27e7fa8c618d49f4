#ifndef PHC_PHC_H
#define PHC_PHC_H

/* C interface to the Poisson heat content library.
 *
 * Objects are opaque handles created and destroyed by the library. Every
 * function returns a phc_status; on failure phc_last_error() describes the
 * problem for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(PHC_BUILDING_LIBRARY)
#define PHC_API __attribute__((visibility("default")))
#else
#define PHC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum phc_status {
  PHC_OK = 0,
  PHC_ERR_DOMAIN = 1,
  PHC_ERR_INVALID_SHAPE = 2,
  PHC_ERR_DIMENSION_MISMATCH = 3,
  PHC_ERR_NON_UNIT_VECTOR = 4,
  PHC_ERR_QUADRATURE = 5,
  PHC_ERR_TOLERANCE = 6,
  PHC_ERR_NEGATIVE_GAMMA = 7,
  PHC_ERR_DIVERGENCE = 8,
  PHC_ERR_BOUND_VIOLATION = 9,
  PHC_ERR_INCONSISTENT_CONSTANT = 10,
  PHC_ERR_ILL_CONDITIONED = 11,
  PHC_ERR_SAMPLING = 12,
  PHC_ERR_PARSE = 13,
  PHC_ERR_IO = 14,
  PHC_ERR_NULL = 15,
  PHC_ERR_INTERNAL = 16
} phc_status;

typedef struct phc_shape phc_shape;
typedef struct phc_quad phc_quad;
typedef struct phc_verify_report phc_verify_report;

typedef struct phc_breakdown {
  double t, H, phi, psi, F, R, residual, D;
} phc_breakdown;

typedef struct phc_third_term {
  double C_formula;
  int has_closed;
  double C_closed;
  double C_extrapolated;
  double extrapolation_err;
  double gamma_integral;
  double F_limit;
  double phi_slope;
  double coeff_tlogt;
  double coeff_t;
  double observed_order;
  int gamma_integrable;
} phc_third_term;

typedef struct phc_geometry {
  int dim;
  double volume, perimeter, support_radius;
} phc_geometry;

typedef struct phc_constants {
  double kappa, ball_volume, sphere_area, tanh_deficit;
} phc_constants;

typedef struct phc_mc_estimate {
  double mean, std_error;
  int64_t n;
  uint64_t seed;
} phc_mc_estimate;

typedef struct phc_verify_row {
  const char* target;
  const char* criterion;
  double achieved;
  double required;
  int pass;
  const char* note;
} phc_verify_row;

PHC_API const char* phc_version(void);
PHC_API const char* phc_status_string(phc_status status);
/* Message of the last failure on this thread; empty when none. */
PHC_API const char* phc_last_error(void);

/* Shapes. */
PHC_API phc_status phc_shape_ball(int dim, phc_shape** out);
PHC_API phc_status phc_shape_rectangle(double hx, double hy, phc_shape** out);
/* xy holds count (x, y) pairs in counterclockwise order. */
PHC_API phc_status phc_shape_polygon(const double* xy, size_t count, phc_shape** out);
PHC_API phc_status phc_shape_interval(double a, double b, phc_shape** out);
/* ball2, ball3, square, interval, triangle. */
PHC_API phc_status phc_shape_named(const char* name, phc_shape** out);
PHC_API phc_status phc_shape_from_json(const char* json, phc_shape** out);
PHC_API void phc_shape_free(phc_shape* shape);
PHC_API phc_status phc_shape_geometry(const phc_shape* shape, phc_geometry* out);
/* Copies a NUL-terminated description into buf, truncating if needed. */
PHC_API phc_status phc_shape_describe(const phc_shape* shape, char* buf, size_t size);

/* Quadrature settings; NULL quad arguments elsewhere mean the defaults. */
PHC_API phc_status phc_quad_new(phc_quad** out);
PHC_API phc_status phc_quad_set_tolerance(phc_quad* quad, double abs_tol, double rel_tol);
PHC_API void phc_quad_free(phc_quad* quad);

PHC_API phc_status phc_constants_for_dim(int dim, phc_constants* out);

PHC_API phc_status phc_covariance(const phc_shape* shape, const double* y, size_t dim,
                                  double* out);
PHC_API phc_status phc_gamma(const phc_shape* shape, double s, const phc_quad* quad,
                             double* out);
PHC_API phc_status phc_gamma_integral(const phc_shape* shape, const phc_quad* quad,
                                      double* value, double* err, int* integrable);

PHC_API phc_status phc_heat_content(const phc_shape* shape, double t,
                                    const phc_quad* quad, double* out);
PHC_API phc_status phc_decomposition(const phc_shape* shape, double t,
                                     const phc_quad* quad, phc_breakdown* out);
/* Fills count rows on a geometric grid from t_max down to t_min. Rows that
 * fail keep NaN values and a nonzero entry in statuses (may be NULL); the
 * call returns the first failing status in grid order. */
PHC_API phc_status phc_sweep(const phc_shape* shape, double t_min, double t_max,
                             int count, const phc_quad* quad, phc_breakdown* rows,
                             phc_status* statuses);
/* count points from t_max down to t_min, geometrically spaced. */
PHC_API phc_status phc_geometric_grid(double t_min, double t_max, int count, double* out);
/* t_grid strictly decreasing; NULL with count 0 selects 2^-k, k = 4..16. */
PHC_API phc_status phc_third_term_compute(const phc_shape* shape, const phc_quad* quad,
                                  const double* t_grid, size_t count,
                                  phc_third_term* out);

PHC_API phc_status phc_mc_heat_content(const phc_shape* shape, double t, int64_t n,
                                       uint64_t seed, phc_mc_estimate* out);
PHC_API phc_status phc_mc_covariance(const phc_shape* shape, const double* y,
                                     size_t dim, int64_t n, uint64_t seed,
                                     phc_mc_estimate* out);

/* target: ball2, ball3, square, interval or all. */
PHC_API phc_status phc_verify(const char* target, const phc_quad* quad,
                              phc_verify_report** out);
PHC_API size_t phc_verify_row_count(const phc_verify_report* report);
/* Strings stay valid until the report is freed. */
PHC_API phc_status phc_verify_row_at(const phc_verify_report* report, size_t index,
                                     phc_verify_row* out);
PHC_API int phc_verify_all_passed(const phc_verify_report* report);
PHC_API void phc_verify_report_free(phc_verify_report* report);

#ifdef __cplusplus
}
#endif

#endif
