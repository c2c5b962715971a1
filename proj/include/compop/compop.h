/* C interface to the compop library. Handles are opaque; every call returns a
 * status and, on failure, leaves a message for compop_last_error() on the
 * calling thread. Strings handed out by the library are released with
 * compop_string_free(). */
#ifndef COMPOP_COMPOP_H
#define COMPOP_COMPOP_H

#include <stddef.h>

#if defined(COMPOP_BUILDING_LIBRARY)
#define COMPOP_API __attribute__((visibility("default")))
#else
#define COMPOP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum compop_status {
  COMPOP_OK = 0,
  COMPOP_E_DEGENERATE_MAP,
  COMPOP_E_IDENTITY_MAP,
  COMPOP_E_NOT_SELF_MAP,
  COMPOP_E_PARAM_OUT_OF_RANGE,
  COMPOP_E_ORDER_MISMATCH,
  COMPOP_E_ZERO_CONSTANT_TERM,
  COMPOP_E_POLE_INSIDE_DISK,
  COMPOP_E_NEGATIVE_PARAMETER,
  COMPOP_E_POINT_OUTSIDE_DOMAIN,
  COMPOP_E_SYMBOL_NOT_ADMISSIBLE,
  COMPOP_E_BAD_SHIFT,
  COMPOP_E_CENTER_OUTSIDE_DISK,
  COMPOP_E_WRONG_SPACE,
  COMPOP_E_DIMENSION_MISMATCH,
  COMPOP_E_SINGULAR_TRUNCATION,
  COMPOP_E_TOO_LARGE,
  COMPOP_E_EMPTY_GRID,
  COMPOP_E_BAD_ANNULUS,
  COMPOP_E_UNRESOLVED,
  COMPOP_E_PARSE,
  COMPOP_E_INVALID_ARGUMENT = 100, /* null pointer or out-of-range index */
  COMPOP_E_INTERNAL = 101
} compop_status;

typedef struct compop_lft compop_lft;
typedef struct compop_matrix compop_matrix;

COMPOP_API const char* compop_version(void);
COMPOP_API const char* compop_status_name(compop_status status);
/* Message of the last failed call on this thread; "" after a success. */
COMPOP_API const char* compop_last_error(void);
COMPOP_API void compop_string_free(char* s);

COMPOP_API compop_status compop_parse_complex(const char* text, double* re, double* im);

/* "a,b,c,d" with complex literals such as 0.5, -2i, 1+3e-2i. */
COMPOP_API compop_status compop_lft_parse(const char* text, compop_lft** out);
/* coeffs = {re a, im a, re b, im b, re c, im c, re d, im d}. */
COMPOP_API compop_status compop_lft_new(const double coeffs[8], compop_lft** out);
COMPOP_API void compop_lft_free(compop_lft* f);
/* {"class", "fixed_points", "multiplier", "self_map", "automorphism", "fock_symbol"} */
COMPOP_API compop_status compop_lft_classify_json(const compop_lft* f, char** out_json);

/* space: "hardy" | "bergman" | "fock"; alpha is read for "fock" only. */
COMPOP_API compop_status compop_matrix_composition(const compop_lft* f, const char* space,
                                                   double alpha, size_t order,
                                                   compop_matrix** out);
COMPOP_API void compop_matrix_free(compop_matrix* m);
COMPOP_API compop_status compop_matrix_order(const compop_matrix* m, size_t* order);
COMPOP_API compop_status compop_matrix_entry(const compop_matrix* m, size_t i, size_t j,
                                             double* re, double* im);
COMPOP_API compop_status compop_matrix_to_json(const compop_matrix* m, char** out_json);
COMPOP_API compop_status compop_matrix_to_matrix_market(const compop_matrix* m, char** out_text);
/* {"eigenvalues": [[re, im], ...], "ratio_count": n} */
COMPOP_API compop_status compop_matrix_eigs_json(const compop_matrix* m, char** out_json);

/* oversample: -1 automatic, 0 off, 1 on. */
COMPOP_API compop_status compop_extcheck_json(const compop_lft* f, const char* space, double alpha,
                                              size_t order, double lambda_re, double lambda_im,
                                              const char* witness, size_t margin,
                                              double threshold, int oversample,
                                              char** out_json);

/* options_json keys (all optional): "grid" {"shape", "points", "rmin", "rmax"}, missing
 * fields taken from the default grid for the symbol's class,
 * "threshold", "spectrum" ("truncation" | "certified").
 * The JSON summary carries "prediction" = "ok" | "unresolved". out_csv may be NULL. */
COMPOP_API compop_status compop_extscan_json(const compop_lft* f, const char* space, double alpha,
                                             size_t order, const char* options_json,
                                             char** out_json, char** out_csv);

/* options_json keys (all optional): "grid", "threshold", "oversample" (bool).
 * Returns COMPOP_E_UNRESOLVED for classes without witnesses. Failing checks are
 * reported in the JSON ("all_pass": false) with COMPOP_OK. */
COMPOP_API compop_status compop_verify_json(const compop_lft* f, const char* space, double alpha,
                                            size_t order, const char* options_json,
                                            char** out_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* COMPOP_COMPOP_H */
