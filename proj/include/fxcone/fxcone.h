/* C interface to the fxcone library. All handles are opaque; every fallible
 * call returns an fxc_status and leaves a message in fxc_last_error(). */
#ifndef FXCONE_FXCONE_H
#define FXCONE_FXCONE_H

#include <stddef.h>
#include <stdint.h>

#if defined(FXCONE_BUILDING_LIBRARY)
#define FXC_API __attribute__((visibility("default")))
#else
#define FXC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fxc_status {
  FXC_OK = 0,
  FXC_INVALID_ARGUMENT = 1,
  FXC_COMPOSITE_P = 2,
  FXC_BUDGET_EXCEEDED = 3,
  FXC_MODEL_UNAVAILABLE = 4,
  FXC_NOT_ON_CONE = 5,
  FXC_ZERO_FUNCTION = 6,
  FXC_PRINCIPAL_CHARACTER = 7,
  FXC_NON_UNIMODULAR = 8,
  FXC_PARSE_ERROR = 20,
  FXC_INTERNAL = 99
} fxc_status;

typedef struct fxc_field fxc_field;
typedef struct fxc_cone fxc_cone;

FXC_API const char* fxc_version(void);
FXC_API const char* fxc_status_string(fxc_status status);
/* Message for the last failure on the calling thread; "" if none. */
FXC_API const char* fxc_last_error(void);

FXC_API fxc_status fxc_field_create(uint32_t p, uint32_t n, fxc_field** out);
FXC_API void fxc_field_destroy(fxc_field* field);
FXC_API uint32_t fxc_field_order(const fxc_field* field);
FXC_API fxc_status fxc_field_add(const fxc_field* field, uint32_t a, uint32_t b, uint32_t* out);
FXC_API fxc_status fxc_field_mul(const fxc_field* field, uint32_t a, uint32_t b, uint32_t* out);
FXC_API fxc_status fxc_field_trace(const fxc_field* field, uint32_t x, uint32_t* out);
/* FXC_MODEL_UNAVAILABLE when q = 3 mod 4. */
FXC_API fxc_status fxc_field_sqrt_minus_one(const fxc_field* field, uint32_t* out);

/* model: "product", "quadratic22" or "quadratic31". The cone keeps its own
 * reference to the field, which may be destroyed afterwards. */
FXC_API fxc_status fxc_cone_create(const fxc_field* field, const char* model, fxc_cone** out);
FXC_API void fxc_cone_destroy(fxc_cone* cone);
FXC_API size_t fxc_cone_size(const fxc_cone* cone);
FXC_API fxc_status fxc_cone_point(const fxc_cone* cone, size_t ordinal, uint32_t out[4]);
FXC_API fxc_status fxc_cone_sigma_count(const fxc_cone* cone, const uint32_t xi[4], uint64_t* out);
/* im may be NULL for a real function. */
FXC_API fxc_status fxc_ratio(const fxc_cone* cone, const double* re, const double* im, size_t len, double* out);
/* Sharp constant as a reduced fraction; the strings are returned through
 * out_c and freed with fxc_string_free. */
FXC_API fxc_status fxc_sharp_constant(uint32_t p, uint32_t n, char** out_c, double* out_value);

/* Runs a command (field, cone, census, constant, ratio, verify-all, optimize)
 * with a JSON configuration object and returns the JSON report. all_pass is
 * set to 1 when every certificate in the report passed. */
FXC_API fxc_status fxc_run(const char* command, const char* config_json, char** out_report, int* all_pass);
/* Renders a JSON report as "json", "csv" or "text". */
FXC_API fxc_status fxc_render(const char* report_json, const char* format, char** out);
FXC_API void fxc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* FXCONE_FXCONE_H */
