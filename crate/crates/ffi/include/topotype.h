#ifndef TOPOTYPE_H
#define TOPOTYPE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every function.
 */
typedef enum TopotypeStatus {
  TOPOTYPE_STATUS_OK = 0,
  TOPOTYPE_STATUS_NULL_POINTER = 1,
  TOPOTYPE_STATUS_INVALID_ARGUMENT = 2,
  TOPOTYPE_STATUS_NOT_PRIME = 3,
  TOPOTYPE_STATUS_INADMISSIBLE = 4,
  TOPOTYPE_STATUS_NO_ACTION = 5,
  TOPOTYPE_STATUS_GUARD_EXCEEDED = 6,
  TOPOTYPE_STATUS_INTERNAL = 7,
} TopotypeStatus;

/*
 Opaque result of a count.
 */
typedef struct TopotypeReport TopotypeReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Counts rank-2 types for the partition with `len` parts at `parts`.

 # Safety
 `parts` must point to `len` readable `uint32_t`s and `out` must be a
 valid pointer to write the handle to.
 */
enum TopotypeStatus topotype_count_rank2(uint64_t p,
                                         const uint32_t *parts,
                                         size_t len,
                                         struct TopotypeReport **out);

/*
 Counts rank-1 types with `r` branch points.

 # Safety
 `out` must be a valid pointer to write the handle to.
 */
enum TopotypeStatus topotype_count_rank1(uint64_t p, uint32_t r, struct TopotypeReport **out);

/*
 Per-partition counts and their total for rank `k` and `r` branch points.

 # Safety
 `out` must be a valid pointer to write the handle to.
 */
enum TopotypeStatus topotype_total(uint64_t p, uint32_t k, uint32_t r, struct TopotypeReport **out);

/*
 Writes the count (or total) as a decimal string.

 # Safety
 `report` must be a live handle and `out` a valid pointer.
 */
enum TopotypeStatus topotype_report_count(const struct TopotypeReport *report, char **out);

/*
 Number of per-partition rows: 1 for a single count.

 # Safety
 `report` must be a live handle and `out` a valid pointer.
 */
enum TopotypeStatus topotype_report_rows(const struct TopotypeReport *report, size_t *out);

/*
 Writes the full report as JSON, numbers as decimal strings.

 # Safety
 `report` must be a live handle and `out` a valid pointer.
 */
enum TopotypeStatus topotype_report_json(const struct TopotypeReport *report, char **out);

/*
 Frees a handle; null is ignored.

 # Safety
 `report` must be null or a handle not yet freed.
 */
void topotype_report_free(struct TopotypeReport *report);

/*
 Genus from Riemann-Hurwitz as a decimal string.

 # Safety
 `out` must be a valid pointer.
 */
enum TopotypeStatus topotype_genus(uint64_t p, uint32_t k, uint32_t r, char **out);

/*
 Klein four-group count for `r` branch points as a decimal string.

 # Safety
 `out` must be a valid pointer.
 */
enum TopotypeStatus topotype_count_klein(uint32_t r, char **out);

/*
 Exhaustive orbit count with the default feasibility guard.

 # Safety
 `out` must be a valid pointer.
 */
enum TopotypeStatus topotype_orbit_count(uint64_t p, uint32_t k, uint32_t r, uint64_t *out);

/*
 Frees a string returned by this library; null is ignored.

 # Safety
 `s` must be null or a string from this library not yet freed.
 */
void topotype_string_free(char *s);

/*
 Message for the last failed call on this thread, or null. Valid until the
 next call into the library on the same thread.
 */
const char *topotype_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPOTYPE_H */
