#ifndef COSHEAF_H
#define COSHEAF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CosheafPipeline {
  COSHEAF_PIPELINE_BM = 0,
  COSHEAF_PIPELINE_CECH = 1,
  COSHEAF_PIPELINE_DERIVED = 2,
  COSHEAF_PIPELINE_SUBDIVISION = 3,
} CosheafPipeline;

typedef enum CosheafStatus {
  COSHEAF_STATUS_OK = 0,
  COSHEAF_STATUS_INPUT_ERROR = 1,
  COSHEAF_STATUS_CONTRACT_ERROR = 2,
  COSHEAF_STATUS_MISMATCH = 3,
  COSHEAF_STATUS_NULL_ARGUMENT = 4,
  COSHEAF_STATUS_INVALID_UTF8 = 5,
  COSHEAF_STATUS_PANIC = 6,
} CosheafStatus;

/**
 * Opaque parsed document.
 */
typedef struct CosheafDocument CosheafDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread. The pointer stays valid until
 * the next failing call on the same thread; never free it.
 */
const char *cosheaf_last_error(void);

/**
 * Parses a NUL-terminated JSON document.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` valid for writes.
 */
enum CosheafStatus cosheaf_document_parse(const char *json, struct CosheafDocument **out);

/**
 * # Safety
 * `doc` must come from [`cosheaf_document_parse`] and not be used afterwards.
 */
void cosheaf_document_free(struct CosheafDocument *doc);

/**
 * Number of poset elements (cells, for simplicial-complex documents).
 *
 * # Safety
 * `doc` must be a live document handle or null.
 */
size_t cosheaf_document_element_count(const struct CosheafDocument *doc);

/**
 * Homology report as JSON. `max_degree` applies to the derived pipeline;
 * the others report every degree of their complex.
 *
 * # Safety
 * `doc` must be a live document handle and `out_json` valid for writes.
 */
enum CosheafStatus cosheaf_homology(const struct CosheafDocument *doc,
                                    enum CosheafPipeline pipeline,
                                    uint32_t max_degree,
                                    char **out_json);

/**
 * Runs all four pipelines and writes the reports as a JSON array. Returns
 * [`CosheafStatus::Mismatch`] (with the output still written) when they disagree.
 *
 * # Safety
 * `doc` must be a live document handle and `out_json` valid for writes.
 */
enum CosheafStatus cosheaf_crosscheck(const struct CosheafDocument *doc, char **out_json);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cosheaf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COSHEAF_H */
