#ifndef BRAIDWORK_H
#define BRAIDWORK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BwProtocol {
  BW_PROTOCOL_Y = 0,
  BW_PROTOCOL_A = 1,
} BwProtocol;

typedef enum BwStatus {
  BW_STATUS_OK = 0,
  BW_STATUS_NULL_ARGUMENT = 1,
  BW_STATUS_BAD_STRING = 2,
  BW_STATUS_IO = 3,
  BW_STATUS_PARSE = 4,
  BW_STATUS_INVALID = 5,
  BW_STATUS_RESOURCE_CAP = 6,
  BW_STATUS_UNSUPPORTED = 7,
  BW_STATUS_PRECONDITION = 8,
  BW_STATUS_UNDERDETERMINED = 9,
  BW_STATUS_OTHER = 10,
  BW_STATUS_PANIC = 11,
} BwStatus;

/**
 * Opaque geometry handle.
 */
typedef struct BwGeometry BwGeometry;

/**
 * Opaque logical-map handle.
 */
typedef struct BwLogicalMap BwLogicalMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call on the same thread.
 */
const char *bw_last_error(void);

void bw_string_free(char *s);

enum BwStatus bw_geometry_load(const char *path, struct BwGeometry **out);

enum BwStatus bw_geometry_parse(const char *document, struct BwGeometry **out);

/**
 * Lower the circuit file at `path` to its canonical geometry.
 */
enum BwStatus bw_lower_circuit(const char *path, struct BwGeometry **out);

void bw_geometry_free(struct BwGeometry *g);

/**
 * Serialized geometry document.
 */
enum BwStatus bw_geometry_to_string(const struct BwGeometry *g, char **out);

enum BwStatus bw_geometry_volume(const struct BwGeometry *g, uint64_t *out);

/**
 * `BW_STATUS_OK` when the geometry is well formed, else
 * `BW_STATUS_INVALID` with the violations as the error message.
 */
enum BwStatus bw_geometry_validate(const struct BwGeometry *g);

/**
 * Compute the logical map; `max_cells` of 0 keeps the default cap.
 */
enum BwStatus bw_verify(const struct BwGeometry *g, uint64_t max_cells, struct BwLogicalMap **out);

void bw_logical_map_free(struct BwLogicalMap *m);

/**
 * The map as a structured document.
 */
enum BwStatus bw_logical_map_to_string(const struct BwLogicalMap *m, char **out);

enum BwStatus bw_logical_map_equal(const struct BwLogicalMap *a,
                                   const struct BwLogicalMap *b,
                                   bool *out);

enum BwStatus bw_equivalent(const struct BwGeometry *a,
                            const struct BwGeometry *b,
                            uint64_t max_cells,
                            bool *out);

/**
 * Output error and volume (in logical cells) of `levels` rounds of
 * distillation at input error `p`.
 */
enum BwStatus bw_distill(enum BwProtocol protocol,
                         uint32_t levels,
                         double p,
                         double *error_out,
                         double *volume_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRAIDWORK_H */
