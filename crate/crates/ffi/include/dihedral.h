#ifndef DIHEDRAL_H
#define DIHEDRAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DihedralIso {
  DIHEDRAL_ISO_ISOMORPHIC = 0,
  DIHEDRAL_ISO_NOT_ISOMORPHIC = 1,
  DIHEDRAL_ISO_UNDECIDED = 2,
} DihedralIso;

typedef enum DihedralStatus {
  DIHEDRAL_STATUS_OK = 0,
  DIHEDRAL_STATUS_NULL_POINTER = 1,
  DIHEDRAL_STATUS_INVALID_UTF8 = 2,
  DIHEDRAL_STATUS_PARSE = 3,
  DIHEDRAL_STATUS_INVALID_Q = 4,
  DIHEDRAL_STATUS_INVALID_WORD = 5,
  DIHEDRAL_STATUS_INVALID_MODULE = 6,
  DIHEDRAL_STATUS_GROUP_MISMATCH = 7,
  DIHEDRAL_STATUS_NOT_ELIGIBLE = 8,
  DIHEDRAL_STATUS_JSON = 9,
  DIHEDRAL_STATUS_OTHER = 10,
  DIHEDRAL_STATUS_PANIC = 11,
} DihedralStatus;

/**
 * Opaque module handle.
 */
typedef struct DihedralRep DihedralRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *dihedral_last_error(void);

/**
 * Builds the string module `M(word)` for the group of order `4q`.
 * `word` is space separated, e.g. `"a b- a"`.
 *
 * # Safety
 * `word` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DihedralStatus dihedral_string_module(size_t q, const char *word, struct DihedralRep **out);

/**
 * Reads a module from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DihedralStatus dihedral_rep_from_json(const char *json, struct DihedralRep **out);

/**
 * Writes the JSON form of `rep` to `*out`; release it with
 * `dihedral_string_free`.
 *
 * # Safety
 * `rep` must be a live handle and `out` a valid pointer.
 */
enum DihedralStatus dihedral_rep_to_json(const struct DihedralRep *rep, char **out);

/**
 * Dimension of `rep`, or 0 for null.
 *
 * # Safety
 * `rep` must be null or a live handle.
 */
size_t dihedral_rep_dim(const struct DihedralRep *rep);

/**
 * # Safety
 * `rep` must be null or a handle not yet freed.
 */
void dihedral_rep_free(struct DihedralRep *rep);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void dihedral_string_free(char *s);

/**
 * `Ω^{-power}` of `rep`: negative powers take syzygies.
 *
 * # Safety
 * `rep` must be a live handle and `out` a valid pointer.
 */
enum DihedralStatus dihedral_heller(const struct DihedralRep *rep,
                                    int64_t power,
                                    struct DihedralRep **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum DihedralStatus dihedral_tensor(const struct DihedralRep *a,
                                    const struct DihedralRep *b,
                                    struct DihedralRep **out);

/**
 * # Safety
 * `rep` must be a live handle and `out` a valid pointer.
 */
enum DihedralStatus dihedral_dual(const struct DihedralRep *rep, struct DihedralRep **out);

/**
 * Signature `[r, s]` of an even-dimensional non-periodic module.
 *
 * # Safety
 * `rep` must be a live handle; `r` and `s` valid pointers.
 */
enum DihedralStatus dihedral_signature(const struct DihedralRep *rep, int64_t *r, int64_t *s);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum DihedralStatus dihedral_is_isomorphic(const struct DihedralRep *a,
                                           const struct DihedralRep *b,
                                           uint64_t seed,
                                           enum DihedralIso *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIHEDRAL_H */
