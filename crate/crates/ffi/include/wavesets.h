#ifndef WAVESETS_H
#define WAVESETS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Space selector for `ws_verify`.
 */
typedef enum WsSpace {
  /**
   * Use the space recorded in the document.
   */
  WS_SPACE_DOCUMENT = 0,
  WS_SPACE_L2 = 1,
  WS_SPACE_H2 = 2,
} WsSpace;

typedef enum WsStatus {
  WS_STATUS_OK = 0,
  /**
   * A check ran and the set failed it.
   */
  WS_STATUS_FAILED = 1,
  WS_STATUS_NULL_ARGUMENT = 2,
  WS_STATUS_INVALID_UTF8 = 3,
  WS_STATUS_INVALID_DOCUMENT = 4,
  WS_STATUS_MALFORMED_INPUT = 5,
  WS_STATUS_DOMAIN = 6,
  WS_STATUS_NOT_CLASSIFIABLE = 7,
  WS_STATUS_PANIC = 8,
} WsStatus;

/**
 * Opaque set handle.
 */
typedef struct WsSet WsSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library and valid until the next failing call.
 */
const char *ws_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void ws_string_free(char *s);

/**
 * # Safety
 * `set` must be null or a handle returned by this library.
 */
void ws_set_free(struct WsSet *set);

/**
 * Parses a set document (or a bare list of `["lo","hi"]` pairs).
 *
 * # Safety
 * `json_text` must be a nul-terminated string; `out` must be writable.
 */
enum WsStatus ws_set_from_json(const char *json_text, struct WsSet **out);

/**
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum WsStatus ws_set_to_json(const struct WsSet *set, char **out);

/**
 * Number of disjoint intervals in the set, or -1 for a null handle.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
ptrdiff_t ws_set_len(const struct WsSet *set);

/**
 * Lebesgue measure as an exact fraction string.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum WsStatus ws_set_measure(const struct WsSet *set, char **out);

/**
 * Checks the wavelet-set conditions. Returns `Ok` or `Failed`; when
 * `verdict_json` is non-null it receives the full verdict.
 *
 * # Safety
 * `set` must be a live handle; `verdict_json` must be null or writable.
 */
enum WsStatus ws_verify(const struct WsSet *set, enum WsSpace space, char **verdict_json);

/**
 * Builds a named family, e.g. tag `"KA"` with params `"3/8"`.
 *
 * # Safety
 * `tag` and `params` must be nul-terminated strings; `out` writable.
 */
enum WsStatus ws_build_family(const char *tag, const char *params, struct WsSet **out);

/**
 * Classification data of a symmetric L2 wavelet set, as JSON.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum WsStatus ws_classify(const struct WsSet *set, char **out);

/**
 * Three-interval H2 wavelet sets of one case as CSV, header included.
 *
 * # Safety
 * `case_name` must be a nul-terminated string; `out` must be writable.
 */
enum WsStatus ws_enumerate_csv(const char *case_name, int r_max, int s_max, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WAVESETS_H */
