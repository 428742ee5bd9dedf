/* C interface for the shortest path graph library. */

#ifndef SPG_H
#define SPG_H

/* Generated by cbindgen from the spg-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// The call succeeded.
#define SPG_OK 0

// Malformed input: bad text, vertex out of range, self-loop, or equal
// endpoints.
#define SPG_ERR_INVALID_INPUT 1

// The requested endpoints are not connected.
#define SPG_ERR_UNREACHABLE 2

// A geodesic cap or work budget was exhausted.
#define SPG_ERR_CAP_EXCEEDED 3

// An operation precondition failed (for example, synthesizing a graph
// that is not a shortest path graph).
#define SPG_ERR_PRECONDITION 4

// The library detected an internal inconsistency.
#define SPG_ERR_INTERNAL 5

// A required pointer argument was null.
#define SPG_ERR_NULL_ARG 6

// A panic was caught at the boundary.
#define SPG_ERR_PANIC 7

// A string argument was not valid UTF-8.
#define SPG_ERR_UTF8 8

// Opaque undirected graph handle.
typedef struct SpgGraphHandle SpgGraphHandle;

// Opaque computed shortest path graph.
typedef struct SpgResultHandle SpgResultHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create an empty graph on `n` vertices, numbered `0..n`. Never fails;
// free with [`spg_graph_free`].
struct SpgGraphHandle *spg_graph_new(uint32_t n);

// Parse a graph from text in either supported format (edge list or
// JSON). Returns null and stores an error on failure.
//
// # Safety
// `text` must be a valid NUL-terminated string or null.
struct SpgGraphHandle *spg_graph_parse(const char *text);

// Add the undirected edge `u v`. Adding an existing edge is a no-op.
//
// # Safety
// `g` must be a live handle from this library or null.
int32_t spg_graph_add_edge(struct SpgGraphHandle *g, uint32_t u, uint32_t v);

// Number of vertices, or -1 on a null handle.
//
// # Safety
// `g` must be a live handle from this library or null.
int64_t spg_graph_order(const struct SpgGraphHandle *g);

// Release a graph handle. Null is accepted and ignored.
//
// # Safety
// `g` must be a handle from this library, not yet freed, or null.
void spg_graph_free(struct SpgGraphHandle *g);

// Compute the shortest path graph between `a` and `b`. `max_paths` caps
// the geodesic count; pass 0 for the default cap. Returns null and
// stores an error on failure; free the result with [`spg_result_free`].
//
// # Safety
// `g` must be a live handle from this library or null.
struct SpgResultHandle *spg_compute(const struct SpgGraphHandle *g,
                                    uint32_t a,
                                    uint32_t b,
                                    uint64_t max_paths);

// Number of geodesics (vertices of the result), or -1 on a null handle.
//
// # Safety
// `r` must be a live result from this library or null.
int64_t spg_result_order(const struct SpgResultHandle *r);

// Number of labeled edges, or -1 on a null handle.
//
// # Safety
// `r` must be a live result from this library or null.
int64_t spg_result_edge_count(const struct SpgResultHandle *r);

// Fetch edge `index` as endpoints and difference index. Out parameters
// may individually be null to skip them.
//
// # Safety
// `r` must be a live result from this library or null; non-null out
// pointers must be writable.
int32_t spg_result_edge(const struct SpgResultHandle *r,
                        uint64_t index,
                        uint32_t *u,
                        uint32_t *v,
                        uint32_t *level);

// Serialize the result as JSON. Returns null and stores an error on a
// null handle; free with [`spg_string_free`].
//
// # Safety
// `r` must be a live result from this library or null.
char *spg_result_to_json(const struct SpgResultHandle *r);

// Release a computed result. Null is accepted and ignored.
//
// # Safety
// `r` must be a result from this library, not yet freed, or null.
void spg_result_free(struct SpgResultHandle *r);

// Classify a graph; returns the verdict as JSON (`status` is
// `SpgByTheorem`, `NotSpg`, or `UnknownContainsC4`). Returns null and
// stores an error on failure; free with [`spg_string_free`].
//
// # Safety
// `g` must be a live handle from this library or null.
char *spg_classify_json(const struct SpgGraphHandle *g);

// Synthesize a base graph realizing `g`; returns the certificate as
// JSON. `fast` skips per-step self-checks. Returns null and stores an
// error on failure (code `SPG_ERR_PRECONDITION` when `g` is refuted or
// out of the certified range); free with [`spg_string_free`].
//
// # Safety
// `g` must be a live handle from this library or null.
char *spg_synthesize_json(const struct SpgGraphHandle *g, bool fast);

// Release a string returned by this library. Null is accepted and
// ignored.
//
// # Safety
// `s` must be a string from this library, not yet freed, or null.
void spg_string_free(char *s);

// Error code of the most recent failed call on this thread, or
// `SPG_OK` if the most recent call succeeded.
int32_t spg_last_error_code(void);

// Message of the most recent failed call on this thread, or null if the
// most recent call succeeded. Free with [`spg_string_free`].
char *spg_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPG_H */
