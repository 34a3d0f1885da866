#ifndef HDROUTE_H
#define HDROUTE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum HdrStatus {
  HDR_STATUS_OK = 0,
  HDR_STATUS_NULL_POINTER = 1,
  HDR_STATUS_INVALID_UTF8 = 2,
  HDR_STATUS_PARSE = 3,
  HDR_STATUS_INVALID_GRAPH = 4,
  HDR_STATUS_INVALID_PARAMETER = 5,
  HDR_STATUS_NO_PATH = 6,
  HDR_STATUS_LIMIT_EXCEEDED = 7,
  HDR_STATUS_INTERNAL = 8,
} HdrStatus;

// Opaque graph handle.
typedef struct HdrGraph HdrGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a JSON graph document into a new handle stored in `*out`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum HdrStatus hdr_graph_from_json(const char *json, struct HdrGraph **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `graph` must come from `hdr_graph_from_json` and not be freed twice.
void hdr_graph_free(struct HdrGraph *graph);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t hdr_graph_vertex_count(const struct HdrGraph *graph);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t hdr_graph_edge_count(const struct HdrGraph *graph);

// Best HD simple route as JSON `{"path":[...],"hd_capacity":"p/q","iterations":n}`.
//
// # Safety
// `graph` must be a live handle and `out_json` a valid pointer. The string
// written to `*out_json` must be released with `hdr_string_free`.
enum HdrStatus hdr_route(const struct HdrGraph *graph, char **out_json);

// Whether a simple route reaches `threshold` (decimal or `p/q`).
//
// # Safety
// `graph` must be a live handle, `threshold` NUL-terminated, `out` valid.
enum HdrStatus hdr_decide(const struct HdrGraph *graph, const char *threshold, bool *out);

// Counts elementary cycles up to `limit`. When the count passes the limit
// `*exceeds` is set and `*count` is left at 0.
//
// # Safety
// `graph` must be a live handle; `count` and `exceeds` valid pointers.
enum HdrStatus hdr_cycles(const struct HdrGraph *graph,
                          uint64_t limit,
                          uint64_t *count,
                          bool *exceeds);

// Builds the HD-path instance of a DIMACS 3-CNF formula at scale `z` and
// writes its JSON graph document (with the threshold) to `*out_json`.
//
// # Safety
// `dimacs` and `z` must be NUL-terminated; `out_json` valid. Release the
// result with `hdr_string_free`.
enum HdrStatus hdr_reduce(const char *dimacs, const char *z, char **out_json);

// Copy of the calling thread's last error message, or null if none.
// Release with `hdr_string_free`.
char *hdr_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void hdr_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HDROUTE_H */
