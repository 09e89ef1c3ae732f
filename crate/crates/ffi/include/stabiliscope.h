#ifndef STABILISCOPE_H
#define STABILISCOPE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every fallible call.
 */
typedef enum StbStatus {
  STB_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  STB_STATUS_NULL_ARGUMENT = 1,
  /*
   A string argument was not valid UTF-8.
   */
  STB_STATUS_INVALID_UTF8 = 2,
  /*
   Malformed or invalid JSON, rational or argument.
   */
  STB_STATUS_INVALID_INPUT = 3,
  /*
   A rational outside `[0, 1]` was passed to a map.
   */
  STB_STATUS_DOMAIN = 4,
  /*
   A gap or curve index past the end of the model.
   */
  STB_STATUS_OUT_OF_RANGE = 5,
  /*
   A Rust panic was caught at the boundary.
   */
  STB_STATUS_INTERNAL = 99,
} StbStatus;

/*
 Piecewise-linear map on `[0, 1]`.
 */
typedef struct StbMap StbMap;

/*
 Farey-marked fiber model.
 */
typedef struct StbModel StbModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *stb_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed already.
 */
void stb_string_free(char *s);

/*
 Builds a map from JSON: `{"n", "monomials"}` or `{"breakpoints", "pieces"}`.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum StbStatus stb_map_from_json(const char *json, struct StbMap **out);

/*
 The envelope map of `(x, y) ↦ (x², x⁴y⁻³ + y³)`.

 # Safety
 `out` must be writable.
 */
enum StbStatus stb_map_fold(struct StbMap **out);

/*
 # Safety
 `map` must be null or a handle from this library not yet freed.
 */
void stb_map_free(struct StbMap *map);

/*
 # Safety
 `map` must be a live handle; `out` must be writable.
 */
enum StbStatus stb_map_to_json(const struct StbMap *map, char **out);

/*
 `T(q)` as an `"a/b"` string.

 # Safety
 `map` must be a live handle, `q` a NUL-terminated string, `out` writable.
 */
enum StbStatus stb_map_eval(const struct StbMap *map, const char *q, char **out);

/*
 `[T(q0), …, T^steps(q0)]` as a JSON array of strings.

 # Safety
 `map` must be a live handle, `q0` a NUL-terminated string, `out` writable.
 */
enum StbStatus stb_map_orbit_json(const struct StbMap *map,
                                  const char *q0,
                                  uintptr_t steps,
                                  char **out);

/*
 The model `{0, 1}`.

 # Safety
 `out` must be writable.
 */
enum StbStatus stb_model_unit(struct StbModel **out);

/*
 Builds a model from `{"marked": [...]}`.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum StbStatus stb_model_from_json(const char *json, struct StbModel **out);

/*
 # Safety
 `model` must be null or a handle from this library not yet freed.
 */
void stb_model_free(struct StbModel *model);

/*
 Number of marked curves, or 0 for a null handle.

 # Safety
 `model` must be null or a live handle.
 */
uintptr_t stb_model_num_marked(const struct StbModel *model);

/*
 Blows up the point of gap `gap` in place, marking the mediant.

 # Safety
 `model` must be a live handle.
 */
enum StbStatus stb_model_blowup(struct StbModel *model, uintptr_t gap);

/*
 # Safety
 `model` must be a live handle; `out` must be writable.
 */
enum StbStatus stb_model_to_json(const struct StbModel *model, char **out);

/*
 The dual graph of the marked curves in DOT.

 # Safety
 `model` must be a live handle; `out` must be writable.
 */
enum StbStatus stb_model_to_dot(const struct StbModel *model, char **out);

/*
 Decides algebraic stability. `out_report`, if not null, receives the
 verdict and the chosen orbit as JSON.

 # Safety
 Handles must be live; `out_stable` writable; `out_report` null or writable.
 */
enum StbStatus stb_analyze(const struct StbModel *model,
                           const struct StbMap *map,
                           bool *out_stable,
                           char **out_report);

/*
 Runs at most `budget` rounds of the minimal stabilisation algorithm.
 `tie_break` is null (smallest start) or one of `smallest-start`,
 `largest-start`, `random[:seed]`, `any-minimal[:seed]`. The final model
 is a new handle.

 # Safety
 Handles must be live; `tie_break` null or NUL-terminated; outputs writable.
 */
enum StbStatus stb_run_msa(const struct StbModel *model,
                           const struct StbMap *map,
                           uintptr_t budget,
                           const char *tie_break,
                           bool *out_terminated,
                           struct StbModel **out_model);

/*
 Checks the non-termination certificate over `steps` orbit steps.
 `out_json`, if not null, receives the full certificate.

 # Safety
 `map` must be live; `out_valid` writable; `out_json` null or writable.
 */
enum StbStatus stb_certify(const struct StbMap *map,
                           uintptr_t steps,
                           bool *out_valid,
                           char **out_json);

/*
 Lifts `{"comp", "lengths", "length1_curves"}` until stable; writes the
 visited states as a JSON array.

 # Safety
 `state_json` must be NUL-terminated; `out` must be writable.
 */
enum StbStatus stb_lift_sim_json(const char *state_json, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* STABILISCOPE_H */
