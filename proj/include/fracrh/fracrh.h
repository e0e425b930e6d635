/* C interface to the fracrh stability library.
 *
 * All objects are opaque handles created by frh_*_create / producing calls
 * and released with the matching frh_*_free. Every fallible call returns an
 * frh_status; on failure frh_last_error() describes the problem (the
 * message is thread-local and valid until the next failing call on that
 * thread). Matrices are passed row-major, polynomials by descending
 * coefficients with the leading one first.
 */
#ifndef FRACRH_H
#define FRACRH_H

#include <stddef.h>
#include <stdint.h>

#if defined(FRACRH_BUILDING_LIBRARY)
#define FRH_API __attribute__((visibility("default")))
#else
#define FRH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum frh_status {
  FRH_OK = 0,
  FRH_E_INPUT = 1,
  FRH_E_DOMAIN = 2,
  FRH_E_DEGENERATE_LEADING = 3,
  FRH_E_CONVERGENCE = 4,
  FRH_E_DIMENSION = 5,
  FRH_E_UNSUPPORTED = 6,
  FRH_E_NO_BRACKET = 7,
  FRH_E_PARSE = 8,
  FRH_E_INTERNAL = 9,
  FRH_E_NULL_ARGUMENT = 10,
  FRH_E_IO = 11
} frh_status;

typedef enum frh_outcome { FRH_NOT_STABLE = 0, FRH_STABLE = 1, FRH_BOUNDARY = 2 } frh_outcome;

typedef enum frh_method {
  FRH_METHOD_THEOREM1 = 0,
  FRH_METHOD_CLOSED_FORM = 1,
  FRH_METHOD_ARGUMENT_ORACLE = 2,
  FRH_METHOD_TAVAZOEI_EMBED = 3,
  FRH_METHOD_GENERALIZED_RH = 4,
  FRH_METHOD_CLASSICAL_RH = 5
} frh_method;

/* Raster cell codes. */
enum { FRH_CELL_NOT_STABLE = 0, FRH_CELL_STABLE = 1, FRH_CELL_BOUNDARY = 2, FRH_CELL_DEGENERATE = 3 };

typedef enum frh_scan_method { FRH_SCAN_AUTO = 0, FRH_SCAN_THEOREM1 = 1, FRH_SCAN_CLOSED_FORM = 2 } frh_scan_method;

typedef enum frh_degenerate_policy { FRH_DEGENERATE_MARK = 0, FRH_DEGENERATE_DELEGATE = 1 } frh_degenerate_policy;

typedef struct frh_options {
  double minor_tolerance;
  double angle_tolerance;
  double degeneracy_tolerance;
} frh_options;

typedef struct frh_verdict frh_verdict;
typedef struct frh_derivation frh_derivation;
typedef struct frh_family frh_family;
typedef struct frh_raster frh_raster;
typedef struct frh_batch frh_batch;

FRH_API const char* frh_version(void);
FRH_API const char* frh_last_error(void);
FRH_API const char* frh_status_name(frh_status status);
FRH_API const char* frh_outcome_name(frh_outcome outcome);
FRH_API const char* frh_method_name(frh_method method);

/* Defaults: minor 1e-9, angle 1e-9, degeneracy 1e-12. */
FRH_API void frh_options_default(frh_options* options);

/* Parses "3", "-0.25", "1e-3" or "p/q". */
FRH_API frh_status frh_parse_number(const char* text, double* out);

/* ---- polynomials ---- */

/* coeffs_out receives n + 1 values. */
FRH_API frh_status frh_char_poly(const double* matrix, size_t n, double* coeffs_out);

/* Exact characteristic polynomial of a matrix given as n*n rational strings.
 * coeffs_out receives n + 1 strings in lowest terms, each released with
 * frh_string_free. */
FRH_API frh_status frh_char_poly_exact(const char* const* entries, size_t n, char** coeffs_out);
FRH_API void frh_string_free(char* text);

/* ---- verdicts ---- */

/* options may be NULL for the defaults. degree + 1 coefficients. */
FRH_API frh_status frh_check_matrix(const double* matrix, size_t n, double alpha, const frh_options* options,
                                    frh_verdict** out);
FRH_API frh_status frh_check_polynomial(const double* coeffs, size_t degree, double alpha,
                                        const frh_options* options, frh_verdict** out);
/* Degree 2..4 only. */
FRH_API frh_status frh_closed_form(const double* coeffs, size_t degree, double alpha, const frh_options* options,
                                   frh_verdict** out);
FRH_API frh_status frh_argument_oracle(const double* matrix, size_t n, double alpha, const frh_options* options,
                                       frh_verdict** out);
FRH_API frh_status frh_tavazoei(const double* matrix, size_t n, double alpha, const frh_options* options,
                                frh_verdict** out);

FRH_API frh_outcome frh_verdict_outcome(const frh_verdict* verdict);
FRH_API frh_method frh_verdict_method(const frh_verdict* verdict);
FRH_API int frh_verdict_delegated(const frh_verdict* verdict);
FRH_API double frh_verdict_tolerance(const frh_verdict* verdict);
FRH_API size_t frh_verdict_value_count(const frh_verdict* verdict);
FRH_API double frh_verdict_value(const frh_verdict* verdict, size_t i);
FRH_API double frh_verdict_scale(const frh_verdict* verdict, size_t i);
FRH_API size_t frh_verdict_note_count(const frh_verdict* verdict);
FRH_API const char* frh_verdict_note(const frh_verdict* verdict, size_t i);
FRH_API void frh_verdict_free(frh_verdict* verdict);

/* ---- symbolic reduced conditions ---- */

/* 1 <= n <= 5. */
FRH_API frh_status frh_derive(unsigned n, frh_derivation** out);
FRH_API size_t frh_derivation_count(const frh_derivation* d);
/* Canonical expanded form of P_p, p = 0..count-1. */
FRH_API const char* frh_derivation_condition(const frh_derivation* d, size_t p);
/* Factored display form, e.g. "a_2*(-4*a_2*s + a_1^2)". */
FRH_API const char* frh_derivation_display(const frh_derivation* d, size_t p);
FRH_API unsigned frh_derivation_sin_power(const frh_derivation* d, size_t p);
FRH_API size_t frh_derivation_monomials(const frh_derivation* d, size_t p);
/* -1: no printed reference, 0: mismatch, 1: match, 2: match with opposite sign. */
FRH_API int frh_derivation_reference(const frh_derivation* d, size_t p);
/* Full text report. */
FRH_API const char* frh_derivation_report(const frh_derivation* d);
FRH_API void frh_derivation_free(frh_derivation* d);

/* ---- parameterized families ---- */

/* A(β) = Σ c_k(β, alpha)·A_k; terms added with frh_family_add_term. */
FRH_API frh_status frh_family_create_matrix(const char* const* parameters, size_t parameter_count, size_t order,
                                            frh_family** out);
/* coefficient: polynomial expression over the parameters and "alpha". */
FRH_API frh_status frh_family_add_term(frh_family* family, const char* coefficient, const double* matrix);
/* λ^n + a_1 λ^{n-1} + ... + a_n with a_k given as expressions. */
FRH_API frh_status frh_family_create_polynomial(const char* const* parameters, size_t parameter_count,
                                                const char* const* coefficients, size_t degree, frh_family** out);
FRH_API size_t frh_family_degree(const frh_family* family);
FRH_API size_t frh_family_parameter_count(const frh_family* family);
FRH_API const char* frh_family_parameter(const frh_family* family, size_t i);
/* point holds one value per parameter; coeffs_out receives degree + 1 values. */
FRH_API frh_status frh_family_polynomial(const frh_family* family, const double* point, double alpha,
                                         double* coeffs_out);
FRH_API void frh_family_free(frh_family* family);

typedef struct frh_axis {
  const char* name;
  double lo;
  double hi;
  size_t count;
} frh_axis;

typedef struct frh_fixed {
  const char* name;
  double value;
} frh_fixed;

typedef struct frh_scan_spec {
  const frh_axis* axes;
  size_t axis_count;
  const frh_fixed* fixed;
  size_t fixed_count;
  /* Ignored when an axis is named "alpha". */
  double alpha;
  const frh_options* options; /* NULL for defaults */
  frh_scan_method method;
  frh_degenerate_policy degenerate;
  unsigned workers; /* 0: available parallelism */
} frh_scan_spec;

FRH_API frh_status frh_scan_region(const frh_family* family, const frh_scan_spec* spec, frh_raster** out);
FRH_API size_t frh_raster_axis_count(const frh_raster* raster);
/* The name pointer stays valid for the raster's lifetime. */
FRH_API frh_status frh_raster_axis(const frh_raster* raster, size_t i, frh_axis* out);
FRH_API size_t frh_raster_cell_count(const frh_raster* raster);
/* Last axis varies fastest. */
FRH_API const uint8_t* frh_raster_cells(const frh_raster* raster);
FRH_API size_t frh_raster_count(const frh_raster* raster, int code);
FRH_API double frh_raster_stable_fraction(const frh_raster* raster);
/* Returns 0 when there are no Stable cells. */
FRH_API int frh_raster_stable_box(const frh_raster* raster, size_t axis, double* lo, double* hi);
FRH_API frh_status frh_raster_write_csv(const frh_raster* raster, const char* path);
FRH_API frh_status frh_raster_write_pgm(const frh_raster* raster, const char* path);
FRH_API void frh_raster_free(frh_raster* raster);

typedef struct frh_bisect_spec {
  const char* scan_parameter;
  double scan_max;
  const char* constraint_parameter; /* NULL: none */
  double constraint_lo;
  double constraint_hi;
  size_t samples;
  size_t coarse_steps;
  double tolerance;
  const frh_fixed* fixed;
  size_t fixed_count;
  double alpha;
  const frh_options* options;
} frh_bisect_spec;

typedef struct frh_bisect_result {
  double bound;
  double critical_constraint;
  int saturated;
  int certified;
  size_t evaluations;
} frh_bisect_result;

/* Fills spec with the library defaults (samples 201, coarse_steps 200,
 * tolerance 5e-4, scan_max 10, constraint [0, 1], alpha 1.5). */
FRH_API void frh_bisect_spec_default(frh_bisect_spec* spec);
FRH_API frh_status frh_max_param_bisect(const frh_family* family, const frh_bisect_spec* spec,
                                        frh_bisect_result* out);

/* ---- oracle cross-validation ---- */

typedef struct frh_comparison {
  frh_outcome theorem1;
  frh_outcome argument;
  frh_outcome tavazoei;
  size_t theorem1_minors; /* n */
  size_t tavazoei_minors; /* 2n */
  int theorem1_delegated;
  double critical_distance;
  int decidable;
  int agree;
} frh_comparison;

FRH_API frh_status frh_compare_oracles(const double* matrix, size_t n, double alpha, const frh_options* options,
                                       double exclusion_radius, frh_comparison* out);
FRH_API frh_status frh_compare_oracles_random(size_t order, size_t count, double alpha, uint64_t seed,
                                              const frh_options* options, double exclusion_radius,
                                              frh_batch** out);
FRH_API size_t frh_batch_cases(const frh_batch* batch);
FRH_API size_t frh_batch_compared(const frh_batch* batch);
FRH_API size_t frh_batch_excluded(const frh_batch* batch);
FRH_API size_t frh_batch_delegated(const frh_batch* batch);
FRH_API size_t frh_batch_stable(const frh_batch* batch);
FRH_API size_t frh_batch_not_stable(const frh_batch* batch);
FRH_API size_t frh_batch_disagreement_count(const frh_batch* batch);
/* Index of the i-th disagreeing case within the seeded sequence. */
FRH_API size_t frh_batch_disagreement(const frh_batch* batch, size_t i);
FRH_API void frh_batch_free(frh_batch* batch);

#ifdef __cplusplus
}
#endif

#endif /* FRACRH_H */
