#ifndef QUASILINKAGE_H
#define QUASILINKAGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QlStatus {
  QL_STATUS_OK = 0,
  QL_STATUS_NULL_POINTER = 1,
  QL_STATUS_INVALID_UTF8 = 2,
  QL_STATUS_PARSE = 3,
  // The input breaks a quasilinkage axiom.
  QL_STATUS_VIOLATION = 4,
  // Any other domain error, e.g. flipping a set that is not maximal short.
  QL_STATUS_DOMAIN = 5,
  QL_STATUS_BUFFER_TOO_SMALL = 6,
  QL_STATUS_PANIC = 7,
} QlStatus;

typedef enum QlVariant {
  QL_VARIANT_MODULI = 0,
  QL_VARIANT_STABLE = 1,
} QlVariant;

// Opaque cell complex.
typedef struct QlComplex QlComplex;

// Opaque quasilinkage.
typedef struct QlGame QlGame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error on this thread as a newly allocated JSON string, or NULL.
char *ql_last_error(void);

// # Safety
// `s` must come from this library and not have been freed.
void ql_string_free(char *s);

// Parse and validate a game from `{"n": .., "maximal_short": [[..]]}`.
//
// # Safety
// `json` must be NUL-terminated; `out` must be writable.
enum QlStatus ql_game_from_json(const char *json, struct QlGame **out);

// Short-set game of a generic length vector such as `"1,1,1,1,1"`.
//
// # Safety
// `csv` must be NUL-terminated; `out` must be writable.
enum QlStatus ql_game_from_lengths(const char *csv, struct QlGame **out);

// # Safety
// `game` must come from this library and not have been freed.
void ql_game_free(struct QlGame *game);

// Ground set size, 0 for NULL.
//
// # Safety
// `game` must be a live handle or NULL.
size_t ql_game_n(const struct QlGame *game);

// Bit `i - 1` of `mask` stands for element `i`.
//
// # Safety
// `game` must be a live handle; `out` must be writable.
enum QlStatus ql_game_is_short(const struct QlGame *game, uint32_t mask, bool *out);

// # Safety
// `game` must be a live handle; `out` must be writable.
enum QlStatus ql_game_to_json(const struct QlGame *game, char **out);

// Flip the maximal short set `mask` into a new game.
//
// # Safety
// `game` must be a live handle; `out` must be writable.
enum QlStatus ql_game_flip(const struct QlGame *game, uint32_t mask, struct QlGame **out);

// Realization or Farkas certificate as JSON.
//
// # Safety
// `game` must be a live handle; `out` must be writable.
enum QlStatus ql_game_realize(const struct QlGame *game, char **out);

// # Safety
// `game` must be a live handle; `out` must be writable.
enum QlStatus ql_complex_build(const struct QlGame *game,
                               enum QlVariant variant,
                               struct QlComplex **out);

// # Safety
// `complex` must come from this library and not have been freed.
void ql_complex_free(struct QlComplex *complex);

// Number of cells, 0 for NULL.
//
// # Safety
// `complex` must be a live handle or NULL.
size_t ql_complex_cell_count(const struct QlComplex *complex);

// Euler characteristic, 0 for NULL.
//
// # Safety
// `complex` must be a live handle or NULL.
int64_t ql_complex_euler(const struct QlComplex *complex);

// Copy the f-vector into `buf`. `len` receives the full length; if it
// exceeds `cap` nothing is copied and `BufferTooSmall` is returned.
//
// # Safety
// `complex` must be a live handle; `buf` must hold `cap` entries; `len`
// must be writable.
enum QlStatus ql_complex_f_vector(const struct QlComplex *complex,
                                  size_t *buf,
                                  size_t cap,
                                  size_t *len);

// `{"betti": [..], "torsion": [[..]]}` of the complex.
//
// # Safety
// `complex` must be a live handle; `out` must be writable.
enum QlStatus ql_complex_homology(const struct QlComplex *complex, char **out);

// Full dump: cells with labels and dimensions, covering pairs.
//
// # Safety
// `complex` must be a live handle; `out` must be writable.
enum QlStatus ql_complex_to_json(const struct QlComplex *complex, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUASILINKAGE_H */
