#ifndef QUIPU_H
#define QUIPU_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status returned by every fallible call.
 */
typedef enum QuipuStatus {
  QUIPU_STATUS_OK = 0,
  QUIPU_STATUS_NULL_POINTER = 1,
  QUIPU_STATUS_PARSE = 2,
  QUIPU_STATUS_INVALID_INPUT = 3,
  QUIPU_STATUS_DISCONNECTED = 4,
  QUIPU_STATUS_NUMERIC = 5,
  QUIPU_STATUS_BUFFER_TOO_SMALL = 6,
  QUIPU_STATUS_PANIC = 7,
} QuipuStatus;

/**
 * Opaque graph handle; release with `quipu_graph_free`.
 */
typedef struct QuipuGraph QuipuGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a graph spec such as `closed 7,7 / 1,0`, `dagger 3` or `g6:Fs`?G`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QuipuStatus quipu_graph_parse(const char *spec, struct QuipuGraph **out);

/**
 * Releases a handle from `quipu_graph_parse`; null is ignored.
 *
 * # Safety
 * `g` must come from `quipu_graph_parse` and not be freed twice.
 */
void quipu_graph_free(struct QuipuGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum QuipuStatus quipu_graph_order(const struct QuipuGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum QuipuStatus quipu_graph_diameter(const struct QuipuGraph *g, size_t *out);

/**
 * Certified bracket `[lo, hi]` of width at most `tol` around `ρ(G)`.
 *
 * # Safety
 * `g` must be a live handle; `lo` and `hi` valid pointers.
 */
enum QuipuStatus quipu_spectral_radius(const struct QuipuGraph *g,
                                       double tol,
                                       double *lo,
                                       double *hi);

/**
 * Exact verdict `ρ(G) < (3/2)√2`; `below` receives 1 or 0.
 *
 * # Safety
 * `g` must be a live handle and `below` a valid pointer.
 */
enum QuipuStatus quipu_below_threshold(const struct QuipuGraph *g, int *below);

/**
 * Exact verdict `√(2+√5) < ρ(G) < (3/2)√2`; `inside` receives 1 or 0.
 *
 * # Safety
 * `g` must be a live handle and `inside` a valid pointer.
 */
enum QuipuStatus quipu_in_hoffman_window(const struct QuipuGraph *g, int *inside);

/**
 * Characteristic polynomial as comma-separated integer coefficients,
 * constant term first.
 *
 * # Safety
 * `g` must be a live handle, `buf` writable for `len` bytes (or null to
 * query the size) and `needed` null or valid.
 */
enum QuipuStatus quipu_charpoly(const struct QuipuGraph *g, char *buf, size_t len, size_t *needed);

/**
 * Bracket around `ρ_{m,k}` from the transfer-matrix root function.
 *
 * # Safety
 * `lo` and `hi` must be valid pointers.
 */
enum QuipuStatus quipu_rho_mk(size_t m, size_t k, double tol, double *lo, double *hi);

/**
 * Float value of the threshold `(3/2)√2`.
 */
double quipu_threshold(void);

/**
 * Copies the calling thread's last error message into `buf`.
 *
 * # Safety
 * `buf` must be writable for `len` bytes (or null to query the size) and
 * `needed` null or valid.
 */
enum QuipuStatus quipu_last_error(char *buf, size_t len, size_t *needed);

/**
 * Static name of a status code; unknown codes get a fixed placeholder.
 */
const char *quipu_status_name(int status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUIPU_H */
