#ifndef SP4_H
#define SP4_H

/* Generated by cbindgen from the Rust sources; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of the C interface.
typedef enum Sp4Status {
  // Success.
  SP4_OK = 0,
  // A verification ran and found a failing check.
  SP4_VERIFICATION_FAILED = 1,
  // Malformed input (JSON, rationals, recipes, non-closed subspaces, …).
  SP4_PARSE_ERROR = 2,
  // Irrational spectrum or a structure outside the supported families.
  SP4_OUT_OF_SCOPE = 3,
  // A required pointer argument was null.
  SP4_NULL_POINTER = 4,
  // A string argument was not valid UTF-8.
  SP4_INVALID_UTF8 = 5,
  // Unexpected internal failure.
  SP4_INTERNAL = 6,
} Sp4Status;

// Opaque catalog handle.
typedef struct Sp4Catalog Sp4Catalog;

// Opaque subalgebra handle.
typedef struct Sp4Subalgebra Sp4Subalgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failure on this thread (empty after a success).
// The pointer stays valid until the next call into this library on the
// same thread; do not free it.
const char *sp4_last_error(void);

// Library version as a static string (do not free).
const char *sp4_version(void);

// Release a string returned by this library.  Null is ignored.
//
// # Safety
// `s` must be null or a string obtained from this library and not yet freed.
void sp4_string_free(char *s);

// The built-in catalog.  Never null; release with [`sp4_catalog_free`].
struct Sp4Catalog *sp4_catalog_load(void);

// Parse and validate catalog JSON into a new handle.
//
// # Safety
// `json` must be a valid string; `out` must be valid for writes.
enum Sp4Status sp4_catalog_from_json(const char *json, struct Sp4Catalog **out);

// Release a catalog handle.  Null is ignored.
//
// # Safety
// `h` must be null or a live handle from this library.
void sp4_catalog_free(struct Sp4Catalog *h);

// Number of rows (0 for a null handle).
//
// # Safety
// `h` must be null or a live handle.
size_t sp4_catalog_len(const struct Sp4Catalog *h);

// The catalog as JSON.
//
// # Safety
// `h` must be a live handle; `out` must be valid for writes.
enum Sp4Status sp4_catalog_to_json(const struct Sp4Catalog *h, char **out);

// Certify the catalog and write the JSON report to `out`.  `params` is a
// comma-separated list of rational samples, or null for the default set
// (honouring `SP4_PARAM_SAMPLES`).  Returns `Sp4Ok` when every check passes
// and `Sp4VerificationFailed` otherwise; the report is written in both cases.
//
// # Safety
// `h` must be a live handle; `params` null or a valid string; `out` valid for writes.
enum Sp4Status sp4_catalog_verify(const struct Sp4Catalog *h,
                                  const char *params,
                                  uint64_t seed,
                                  char **out);

// Parse subalgebra JSON (`{"basis": [[["1","0",…],…],…]]}`) into a new handle.
//
// # Safety
// `json` must be a valid string; `out` must be valid for writes.
enum Sp4Status sp4_subalgebra_from_json(const char *json, struct Sp4Subalgebra **out);

// Release a subalgebra handle.  Null is ignored.
//
// # Safety
// `h` must be null or a live handle from this library.
void sp4_subalgebra_free(struct Sp4Subalgebra *h);

// Dimension (0 for a null handle).
//
// # Safety
// `h` must be null or a live handle.
size_t sp4_subalgebra_dim(const struct Sp4Subalgebra *h);

// The subalgebra as JSON.
//
// # Safety
// `h` must be a live handle; `out` must be valid for writes.
enum Sp4Status sp4_subalgebra_to_json(const struct Sp4Subalgebra *h, char **out);

// Conjugation invariants as JSON.
//
// # Safety
// `h` must be a live handle; `out` must be valid for writes.
enum Sp4Status sp4_subalgebra_invariants(const struct Sp4Subalgebra *h, char **out);

// Isomorphism classes and matching catalog rows as JSON
// (`{"dim", "degraaf", "sw", "catalog_matches"}`).
//
// # Safety
// `h` must be a live handle; `out` must be valid for writes.
enum Sp4Status sp4_subalgebra_identify(const struct Sp4Subalgebra *h, char **out);

// Image `g·s·g⁻¹` under a conjugator recipe such as `W*shear:alpha:1/2`,
// as a new handle.
//
// # Safety
// `h` must be a live handle; `recipe` a valid string; `out` valid for writes.
enum Sp4Status sp4_subalgebra_conjugate(const struct Sp4Subalgebra *h,
                                        const char *recipe,
                                        struct Sp4Subalgebra **out);

// JSON-in/JSON-out identification of a subalgebra document.
//
// # Safety
// `json` must be a valid string; `out` must be valid for writes.
enum Sp4Status sp4_identify_json(const char *json, char **out);

// JSON-in/JSON-out conjugation invariants of a subalgebra document.
//
// # Safety
// `json` must be a valid string; `out` must be valid for writes.
enum Sp4Status sp4_invariants_json(const char *json, char **out);

// JSON-in/JSON-out conjugacy class of one element (a 4×4 matrix of
// rational strings).
//
// # Safety
// `json` must be a valid string; `out` must be valid for writes.
enum Sp4Status sp4_classify_element_json(const char *json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SP4_H */
