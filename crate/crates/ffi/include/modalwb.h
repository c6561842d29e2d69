#ifndef MODALWB_H
#define MODALWB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function.
 */
typedef enum MwbStatus {
  MWB_STATUS_OK = 0,
  MWB_STATUS_NULL_ARGUMENT = 1,
  MWB_STATUS_INVALID_UTF8 = 2,
  MWB_STATUS_PARSE_ERROR = 3,
  MWB_STATUS_INVALID_INPUT = 4,
  MWB_STATUS_NOT_FOUND = 5,
  MWB_STATUS_FAILED = 6,
  MWB_STATUS_PANIC = 7,
} MwbStatus;

/**
 * A parsed formula.
 */
typedef struct MwbFormula MwbFormula;

/**
 * A finite 2-model.
 */
typedef struct MwbModel MwbModel;

/**
 * One of the built-in infinite witness models.
 */
typedef struct MwbWitness MwbWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the library.
 */
const char *mwb_last_error(void);

/**
 * Library version as a static string.
 */
const char *mwb_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mwb_string_free(char *s);

/**
 * Parses formula syntax such as `[0](p -> <1>q)`.
 *
 * # Safety
 * `src` must be a nul-terminated string; `out` must be writable.
 */
enum MwbStatus mwb_formula_parse(const char *src, struct MwbFormula **out);

/**
 * Looks up a named corpus formula.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum MwbStatus mwb_formula_corpus(const char *name, struct MwbFormula **out);

/**
 * Renders a formula in the syntax accepted by [`mwb_formula_parse`].
 *
 * # Safety
 * `f` must be a live formula handle; `out_text` must be writable.
 */
enum MwbStatus mwb_formula_render(const struct MwbFormula *f, char **out_text);

/**
 * # Safety
 * `f` must be null or a handle from this library not yet freed.
 */
void mwb_formula_free(struct MwbFormula *f);

/**
 * Reads a model from `{"worlds": n, "r0": [[x,y],..], "r1": [..], "valuation": {"p": [..]}}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum MwbStatus mwb_model_from_json(const char *json, struct MwbModel **out);

/**
 * Number of worlds in the model, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live model handle.
 */
size_t mwb_model_world_count(const struct MwbModel *m);

/**
 * Truth set of `f` in `m`: bit `w` of `out_mask` is set when `f` holds at world `w`.
 *
 * # Safety
 * `m` and `f` must be live handles; `out_mask` must be writable.
 */
enum MwbStatus mwb_model_eval(const struct MwbModel *m,
                              const struct MwbFormula *f,
                              uint64_t *out_mask);

/**
 * # Safety
 * `m` must be null or a handle from this library not yet freed.
 */
void mwb_model_free(struct MwbModel *m);

/**
 * Loads a built-in witness model by name, for example `lemma_satone`.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum MwbStatus mwb_witness_builtin(const char *name, struct MwbWitness **out);

/**
 * The corpus formula a witness is built for, as a new formula handle.
 *
 * # Safety
 * `w` must be a live witness handle; `out` must be writable.
 */
enum MwbStatus mwb_witness_formula(const struct MwbWitness *w, struct MwbFormula **out);

/**
 * Whether `f` holds at `point`, given as JSON such as `{"m": "omega", "k": "root"}`.
 * A null `point` means the witness's own target point.
 *
 * # Safety
 * `w` and `f` must be live handles; `point` must be null or nul-terminated; `out` must be writable.
 */
enum MwbStatus mwb_witness_holds(const struct MwbWitness *w,
                                 const struct MwbFormula *f,
                                 const char *point,
                                 bool *out);

/**
 * The exact truth region of `f` on the witness, as JSON.
 *
 * # Safety
 * `w` and `f` must be live handles; `out_json` must be writable.
 */
enum MwbStatus mwb_witness_region_json(const struct MwbWitness *w,
                                       const struct MwbFormula *f,
                                       char **out_json);

/**
 * # Safety
 * `w` must be null or a handle from this library not yet freed.
 */
void mwb_witness_free(struct MwbWitness *w);

/**
 * Searches the frame class for finite models of `f` and writes the campaign report as JSON.
 *
 * `class` is a comma-separated condition list such as `wcon0,lcom`. With
 * `samples == 0` every frame of size `min_size..=max_size` is checked;
 * otherwise `samples` random in-class frames per size are drawn from `seed`.
 * `out_ok` receives whether no finite model was found.
 *
 * # Safety
 * `f` must be a live handle; `class` must be nul-terminated; the outputs must be writable.
 */
enum MwbStatus mwb_probe(const struct MwbFormula *f,
                         const char *class_,
                         size_t min_size,
                         size_t max_size,
                         bool product_only,
                         uint64_t seed,
                         uint64_t samples,
                         bool *out_ok,
                         char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODALWB_H */
