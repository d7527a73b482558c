#ifndef PISO_H
#define PISO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PisoStatus {
  PISO_STATUS_OK = 0,
  PISO_STATUS_NULL_ARGUMENT = 1,
  PISO_STATUS_INVALID_UTF8 = 2,
  PISO_STATUS_SYNTAX = 3,
  PISO_STATUS_TYPING = 4,
  PISO_STATUS_NOT_ORTHOGONAL = 5,
  PISO_STATUS_NOT_UNITARY = 6,
  PISO_STATUS_NOT_CANONICAL = 7,
  PISO_STATUS_INVALID_DIAGRAM = 8,
  PISO_STATUS_INVALID = 9,
  PISO_STATUS_PANIC = 10,
} PisoStatus;

typedef enum PisoMode {
  PISO_MODE_FREE = 0,
  PISO_MODE_MODEL = 1,
  PISO_MODE_LIFT = 2,
} PisoMode;

typedef enum PisoVerdict {
  PISO_VERDICT_COMMUTES = 0,
  PISO_VERDICT_REJECTED = 1,
  PISO_VERDICT_UNDECIDED = 2,
} PisoVerdict;

/**
 * An arrow of the prefix model.
 */
typedef struct PisoArrow PisoArrow;

/**
 * A 2×2 matrix of endo-arrows of `S`.
 */
typedef struct PisoMatrix PisoMatrix;

/**
 * A self-similar structure at `S`.
 */
typedef struct PisoSss PisoSss;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call into this library on the thread.
 */
const char *piso_last_error_message(void);

void piso_string_free(char *s);

/**
 * Parses a term and evaluates it. Internal operations (`code`, `p`,
 * `tau-int`, ...) are resolved against `sss`, which may be null when the
 * term has none.
 */
enum PisoStatus piso_arrow_parse(const char *src,
                                 const struct PisoSss *sss,
                                 struct PisoArrow **out);

void piso_arrow_free(struct PisoArrow *f);

/**
 * `g ∘ f`.
 */
enum PisoStatus piso_arrow_compose(const struct PisoArrow *g,
                                   const struct PisoArrow *f,
                                   struct PisoArrow **out);

enum PisoStatus piso_arrow_dagger(const struct PisoArrow *f, struct PisoArrow **out);

enum PisoStatus piso_arrow_tensor(const struct PisoArrow *f,
                                  const struct PisoArrow *g,
                                  struct PisoArrow **out);

/**
 * Join of two arrows; fails with `NotOrthogonal` when it is undefined.
 */
enum PisoStatus piso_arrow_join(const struct PisoArrow *f,
                                const struct PisoArrow *g,
                                struct PisoArrow **out);

enum PisoStatus piso_arrow_equals(const struct PisoArrow *f, const struct PisoArrow *g, bool *out);

enum PisoStatus piso_arrow_is_unitary(const struct PisoArrow *f, bool *out);

/**
 * The arrow as an `(arrow ...)` form that [`piso_arrow_parse`] reads back.
 */
enum PisoStatus piso_arrow_to_string(const struct PisoArrow *f, char **out);

enum PisoStatus piso_sss_standard(struct PisoSss **out);

enum PisoStatus piso_sss_swap(struct PisoSss **out);

/**
 * A structure from a unitary code `S□S → S`.
 */
enum PisoStatus piso_sss_from_code(const struct PisoArrow *code, struct PisoSss **out);

void piso_sss_free(struct PisoSss *s);

enum PisoStatus piso_sss_tau(const struct PisoSss *s, struct PisoArrow **out);

enum PisoStatus piso_sss_sigma(const struct PisoSss *s, struct PisoArrow **out);

/**
 * `code ∘ (a ⊎ b) ∘ decode`.
 */
enum PisoStatus piso_sss_internalize(const struct PisoSss *s,
                                     const struct PisoArrow *a,
                                     const struct PisoArrow *b,
                                     struct PisoArrow **out);

enum PisoStatus piso_matrix_rep(const struct PisoArrow *f,
                                const struct PisoSss *s,
                                struct PisoMatrix **out);

/**
 * A copy of entry `(i, j)`, both indices 0 or 1.
 */
enum PisoStatus piso_matrix_entry(const struct PisoMatrix *m,
                                  size_t i,
                                  size_t j,
                                  struct PisoArrow **out);

enum PisoStatus piso_matrix_mul(const struct PisoMatrix *m,
                                const struct PisoMatrix *n,
                                struct PisoMatrix **out);

/**
 * The endo-arrow whose representation under `s` is `m`.
 */
enum PisoStatus piso_matrix_reconstruct(const struct PisoMatrix *m,
                                        const struct PisoSss *s,
                                        struct PisoArrow **out);

void piso_matrix_free(struct PisoMatrix *m);

/**
 * Checks a diagram document (JSON). `sss` is used by model mode and may be
 * null for the standard structure; `bound` is the lift leaf bound. A lift
 * that is not certified reports `Undecided`.
 */
enum PisoStatus piso_coherence_check(const char *json,
                                     enum PisoMode mode,
                                     const struct PisoSss *sss,
                                     size_t bound,
                                     enum PisoVerdict *out);

/**
 * Library version, a static string.
 */
const char *piso_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PISO_H */
