#ifndef CSCRACK_H
#define CSCRACK_H

/* C interface to the steady Mode III crack solver for couple-stress media.
 *
 * Conventions: every function returns a cscrack_status; on failure the
 * message of the last error on the calling thread is available through
 * cscrack_last_error(). Output structs are written only on success.
 * Lengths are normalized by ell, stresses by T0/ell, couple stresses by T0,
 * displacements by T0/G, speeds by c_s. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CSCRACK_BUILDING_LIBRARY)
#    define CSCRACK_API __declspec(dllexport)
#  else
#    define CSCRACK_API __declspec(dllimport)
#  endif
#else
#  define CSCRACK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  CSCRACK_OK = 0,
  CSCRACK_E_INVALID_ARGUMENT = 1,
  CSCRACK_E_INADMISSIBLE = 2,
  CSCRACK_E_DOMAIN = 3,
  CSCRACK_E_QUADRATURE = 4,
  CSCRACK_E_DEGENERATE_DENOMINATOR = 5,
  CSCRACK_E_NO_SIGN_CHANGE = 6,
  CSCRACK_E_NO_INTERIOR_MAX = 7,
  CSCRACK_E_NOT_BRACKETED = 8,
  CSCRACK_E_INSUFFICIENT_POINTS = 9,
  CSCRACK_E_UNKNOWN_FIGURE = 10,
  CSCRACK_E_INTERNAL = 99
} cscrack_status;

CSCRACK_API const char* cscrack_version(void);
CSCRACK_API const char* cscrack_status_string(cscrack_status status);
/* Thread-local; empty string when the last call on this thread succeeded. */
CSCRACK_API const char* cscrack_last_error(void);

/* ---- model ------------------------------------------------------------ */

typedef struct {
  double G;   /* shear modulus [Pa] */
  double rho; /* density [kg/m^3] */
  double ell; /* couple-stress length [m] */
  double eta; /* torsion/bending ratio, -1 < eta < 1 */
  double J;   /* rotational inertia [kg/m] */
} cscrack_material;

typedef struct {
  cscrack_material material;
  double m;  /* crack speed / c_s */
  double T0; /* load resultant [N/m] */
  double L;  /* load decay length [m] */
} cscrack_problem;

typedef struct {
  double m;
  double eta;
  double h0;
  double L_over_ell;
} cscrack_normalized;

typedef struct {
  double c_s, theta, h, h0, ell_b, ell_t;
} cscrack_derived;

typedef enum {
  CSCRACK_DISPERSION_INCREASING = 0,
  CSCRACK_DISPERSION_NONDISPERSIVE = 1,
  CSCRACK_DISPERSION_DECREASING = 2
} cscrack_dispersion_class;

typedef struct {
  int subsonic;
  double subsonic_bound;
  double upsilon; /* NaN when undefined */
  int admissible;
  cscrack_dispersion_class dispersion_class;
} cscrack_regime;

CSCRACK_API void cscrack_material_default(cscrack_material* out);
CSCRACK_API void cscrack_problem_default(cscrack_problem* out);
CSCRACK_API cscrack_status cscrack_derive_constants(const cscrack_material* material, cscrack_derived* out);
CSCRACK_API cscrack_status cscrack_inertia_for_h0(double h0, double rho, double ell, double* J_out);
CSCRACK_API cscrack_status cscrack_normalize(const cscrack_problem* problem, cscrack_normalized* out);
CSCRACK_API double cscrack_subsonic_bound(double h0);
CSCRACK_API cscrack_status cscrack_upsilon(double eta, double hm, double* out);
/* Never fails on a valid pointer; the diagnostic (possibly truncated) is
 * copied into `diagnostic` when it is non-null. */
CSCRACK_API cscrack_status cscrack_validate(const cscrack_normalized* setup, cscrack_regime* out,
                                            char* diagnostic, size_t diagnostic_size);
CSCRACK_API cscrack_status cscrack_validate_problem(const cscrack_problem* problem, cscrack_regime* out,
                                                    char* diagnostic, size_t diagnostic_size);

/* ---- dispersion --------------------------------------------------------- */

CSCRACK_API cscrack_status cscrack_phase_speed_of_frequency(double omega, double h0, double* out);
CSCRACK_API cscrack_status cscrack_phase_speed_of_wavenumber(double k, double h0, double* out);
CSCRACK_API cscrack_status cscrack_wavenumber_of_frequency(double omega, double h0, double* out);
CSCRACK_API double cscrack_dispersion_residual(double k, double omega, double h0);
CSCRACK_API cscrack_dispersion_class cscrack_classify(double h0);

/* ---- quadrature settings ------------------------------------------------ */

typedef struct {
  double rel_tol;
  double abs_tol;
  int max_subdivisions;
  double truncation; /* 0 = automatic */
} cscrack_quad_spec;

CSCRACK_API void cscrack_constants_spec_default(cscrack_quad_spec* out);
CSCRACK_API void cscrack_field_spec_default(cscrack_quad_spec* out);

/* ---- solution ----------------------------------------------------------- */

/* Factorized kernel plus field solver for one admissible setup. Immutable:
 * one handle may be used from several threads at once. */
typedef struct cscrack_solution cscrack_solution;

/* Either spec pointer may be NULL for the defaults. */
CSCRACK_API cscrack_status cscrack_solution_create(const cscrack_normalized* setup,
                                                   const cscrack_quad_spec* constants_spec,
                                                   const cscrack_quad_spec* field_spec,
                                                   cscrack_solution** out);
CSCRACK_API cscrack_status cscrack_solution_create_physical(const cscrack_problem* problem,
                                                            const cscrack_quad_spec* constants_spec,
                                                            const cscrack_quad_spec* field_spec,
                                                            cscrack_solution** out);
CSCRACK_API void cscrack_solution_destroy(cscrack_solution* solution);

typedef struct {
  double c, d, upsilon;
  double F;
  double F_imag_residual;
  double F_error;
  double xi_re, xi_im;
  double theta_interpolation_error;
} cscrack_constants;

CSCRACK_API cscrack_status cscrack_solution_constants(const cscrack_solution* solution, cscrack_constants* out);
CSCRACK_API cscrack_status cscrack_solution_setup(const cscrack_solution* solution, cscrack_normalized* out);

typedef enum {
  CSCRACK_FIELD_W = 0,
  CSCRACK_FIELD_P3 = 1,
  CSCRACK_FIELD_SIGMA23 = 2,
  CSCRACK_FIELD_TAU23 = 3,
  CSCRACK_FIELD_MU22 = 4,
  CSCRACK_FIELD_T23 = 5
} cscrack_field;

CSCRACK_API const char* cscrack_field_name(cscrack_field field);
CSCRACK_API cscrack_status cscrack_field_from_name(const char* name, cscrack_field* out);

typedef struct {
  double X;
  double value;
  double imag_residual;
  double error;
  int tail_dominated;
} cscrack_sample;

/* Field on the crack line: w needs X < 0, every other field X > 0. */
CSCRACK_API cscrack_status cscrack_field_eval(const cscrack_solution* solution, cscrack_field field, double X,
                                              cscrack_sample* out);
/* t23 as the sum of the separate sigma23 and tau23 inversions. */
CSCRACK_API cscrack_status cscrack_total_shear_sum(const cscrack_solution* solution, double X, cscrack_sample* out);
/* Raw inversion at any X (support checks). */
CSCRACK_API cscrack_status cscrack_field_invert(const cscrack_solution* solution, cscrack_field field, double X,
                                                cscrack_sample* out);
CSCRACK_API cscrack_status cscrack_halfplane_displacement(const cscrack_solution* solution, double X, double y,
                                                          cscrack_sample* out);
/* Multiplier from normalized to physical units for `problem`. */
CSCRACK_API cscrack_status cscrack_physical_scale(cscrack_field field, const cscrack_problem* problem,
                                                  double* out);

/* ---- analysis ----------------------------------------------------------- */

typedef struct {
  double x_min, x_max;
  int points;
  double root_tol;
  double peak_tol;
  int scale_with_c;
} cscrack_scan_options;

typedef struct {
  double t23_max, X_max, X0;
  int sign_change;
  double t23_max_error, X_max_error, X0_error;
} cscrack_shear_max;

typedef struct {
  cscrack_scan_options scan;
  cscrack_quad_spec constants;
  cscrack_quad_spec fields;
  int jobs;
} cscrack_sweep_options;

typedef enum { CSCRACK_SWEEP_M = 0, CSCRACK_SWEEP_ETA = 1, CSCRACK_SWEEP_H0 = 2 } cscrack_sweep_param;

typedef struct {
  double param;
  cscrack_normalized setup;
  int ok;
  cscrack_status status; /* failure category when ok == 0 */
  cscrack_shear_max result;
  char error[256];
} cscrack_sweep_record;

typedef struct {
  double param;
  double slope;
  int stable;
} cscrack_stability_point;

CSCRACK_API void cscrack_scan_options_default(cscrack_scan_options* out);
CSCRACK_API void cscrack_sweep_options_default(cscrack_sweep_options* out);
CSCRACK_API cscrack_status cscrack_locate_max_shear(const cscrack_solution* solution,
                                                    const cscrack_scan_options* options, /* NULL = default */
                                                    cscrack_shear_max* out);
/* `out` must hold n records; they are written in grid order. */
CSCRACK_API cscrack_status cscrack_sweep(cscrack_sweep_param param, const double* grid, size_t n,
                                         const cscrack_normalized* base, const cscrack_sweep_options* options,
                                         cscrack_sweep_record* out);
/* `out` must hold n points; *n_out receives the number written. */
CSCRACK_API cscrack_status cscrack_stability_report(const cscrack_sweep_record* records, size_t n,
                                                    cscrack_stability_point* out, size_t* n_out);
/* *found is 0 when tau_c is never reached on the grid range. */
CSCRACK_API cscrack_status cscrack_critical_speed(const cscrack_normalized* base, double tau_c,
                                                  const double* m_grid, size_t n,
                                                  const cscrack_sweep_options* options, double m_tol,
                                                  int* found, double* m_out);

typedef struct {
  double reference;
  double largest;
  double m_at_largest;
  int exceeded;
  double m_exceeded;
} cscrack_growth;

CSCRACK_API cscrack_status cscrack_unbounded_growth(const cscrack_normalized* base, const double* m_grid, size_t n,
                                                    const cscrack_sweep_options* options, double m_ref,
                                                    double factor, cscrack_growth* out);

#ifdef __cplusplus
}
#endif

#endif /* CSCRACK_H */
