/* C interface to the abshell sideband laboratory. */

#ifndef ABSHELL_H
#define ABSHELL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum AbshellStatus {
  ABSHELL_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  ABSHELL_STATUS_NULL_POINTER = 1,
  /**
   * An argument violated its contract; see `abshell_last_error_message`.
   */
  ABSHELL_STATUS_INVALID_INPUT = 2,
  /**
   * A string argument was not valid UTF-8.
   */
  ABSHELL_STATUS_INVALID_UTF8 = 3,
  /**
   * An index was out of range.
   */
  ABSHELL_STATUS_OUT_OF_RANGE = 4,
} AbshellStatus;

/**
 * Unit conventions for drive parameters.
 */
typedef enum AbshellUnits {
  /**
   * hbar = 1, e = 1.
   */
  ABSHELL_UNITS_NATURAL = 0,
  /**
   * Volts, rad/s, Joules.
   */
  ABSHELL_UNITS_SI = 1,
} AbshellUnits;

/**
 * Opaque drive handle.
 */
typedef struct AbshellDrive AbshellDrive;

/**
 * Opaque level-scheme builder handle.
 */
typedef struct AbshellScheme AbshellScheme;

/**
 * Opaque sideband-spectrum handle.
 */
typedef struct AbshellSidebands AbshellSidebands;

/**
 * One sideband of one level: index, energy, amplitude (-1)^n J_n(alpha_i),
 * and weight J_n(alpha_i)^2.
 */
typedef struct AbshellSidebandEntry {
  size_t level_index;
  int32_t n;
  double energy;
  double amplitude;
  double weight;
} AbshellSidebandEntry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message (with trailing NUL) into `buffer`; returns the
 * full length in bytes including the NUL, or 0 when no error is recorded.
 * When `capacity` is too small the message is truncated but still
 * NUL-terminated.
 *
 * # Safety
 * `buffer` must point to at least `capacity` writable bytes, or be NULL
 * (then only the required length is returned).
 */
size_t abshell_last_error_message(char *buffer, size_t capacity);

/**
 * Crate version as a static NUL-terminated string.
 */
const char *abshell_version(void);

/**
 * Build a drive from amplitude, angular frequency, and unit system.
 *
 * # Safety
 * `out` must be a valid pointer; the returned handle must be released with
 * [`abshell_drive_free`].
 */
enum AbshellStatus abshell_drive_new(double v0,
                                     double omega,
                                     enum AbshellUnits units,
                                     struct AbshellDrive **out);

/**
 * Release a drive handle. NULL is a no-op.
 *
 * # Safety
 * `drive` must have come from [`abshell_drive_new`] and not been freed yet.
 */
void abshell_drive_free(struct AbshellDrive *drive);

/**
 * Modulation depth alpha = e v0 / (hbar omega).
 *
 * # Safety
 * `drive` must be a live handle; `out` must be valid.
 */
enum AbshellStatus abshell_drive_alpha(const struct AbshellDrive *drive, double *out);

/**
 * Index of the last non-suppressed sideband, round(alpha).
 *
 * # Safety
 * `drive` must be a live handle; `out` must be valid.
 */
enum AbshellStatus abshell_drive_n_max(const struct AbshellDrive *drive, int64_t *out);

/**
 * Automatic truncation order keeping discarded weight below 1e-12.
 *
 * # Safety
 * `drive` must be a live handle; `out` must be valid.
 */
enum AbshellStatus abshell_drive_auto_truncation(const struct AbshellDrive *drive, uint64_t *out);

/**
 * Scalar AB phase alpha sin(omega t) at time `t` (0 before turn-on).
 *
 * # Safety
 * `drive` must be a live handle; `out` must be valid.
 */
enum AbshellStatus abshell_drive_ab_phase(const struct AbshellDrive *drive, double t, double *out);

/**
 * Create an empty level-scheme builder.
 *
 * # Safety
 * `out` must be valid; release the handle with [`abshell_scheme_free`].
 */
enum AbshellStatus abshell_scheme_new(struct AbshellScheme **out);

/**
 * Append one level (label, energy, dimensionless coupling).
 *
 * # Safety
 * `scheme` must be a live handle; `label` must be a NUL-terminated string.
 */
enum AbshellStatus abshell_scheme_add_level(struct AbshellScheme *scheme,
                                            const char *label,
                                            double energy,
                                            double coupling);

/**
 * Release a scheme handle. NULL is a no-op.
 *
 * # Safety
 * `scheme` must have come from [`abshell_scheme_new`] and not been freed yet.
 */
void abshell_scheme_free(struct AbshellScheme *scheme);

/**
 * Expand every level into its sideband multiplet. `n_hi = 0` picks the
 * automatic truncation.
 *
 * # Safety
 * `scheme` and `drive` must be live handles; `out` must be valid; release
 * the result with [`abshell_sidebands_free`].
 */
enum AbshellStatus abshell_sidebands_compute(const struct AbshellScheme *scheme,
                                             const struct AbshellDrive *drive,
                                             uint32_t n_hi,
                                             struct AbshellSidebands **out);

/**
 * Number of entries in a computed spectrum.
 *
 * # Safety
 * `sidebands` must be a live handle; `out` must be valid.
 */
enum AbshellStatus abshell_sidebands_len(const struct AbshellSidebands *sidebands, size_t *out);

/**
 * Fetch one entry by flat index (levels concatenated, n ascending).
 *
 * # Safety
 * `sidebands` must be a live handle; `out` must be valid.
 */
enum AbshellStatus abshell_sidebands_entry(const struct AbshellSidebands *sidebands,
                                           size_t index,
                                           struct AbshellSidebandEntry *out);

/**
 * Release a sidebands handle. NULL is a no-op.
 *
 * # Safety
 * `sidebands` must have come from [`abshell_sidebands_compute`] and not been
 * freed yet.
 */
void abshell_sidebands_free(struct AbshellSidebands *sidebands);

/**
 * Bessel function of the first kind J_n(x), x >= 0.
 *
 * # Safety
 * `out` must be valid.
 */
enum AbshellStatus abshell_bessel_j(int32_t n, double x, double *out);

/**
 * AC-Stark weighting coefficient C_n; `s_hi = 0` picks the automatic S-sum
 * truncation. Natural units (hbar = 1).
 *
 * # Safety
 * `out` must be valid.
 */
enum AbshellStatus abshell_acstark_cn(double e0,
                                      double d,
                                      double beta,
                                      double omega,
                                      int32_t n,
                                      uint32_t s_hi,
                                      double *out);

/**
 * Steady-state Lambda-system probe coherence; absorption is the imaginary
 * part.
 *
 * # Safety
 * `out_re` and `out_im` must be valid.
 */
enum AbshellStatus abshell_eit_probe_response(double delta_p,
                                              double delta_c,
                                              double rabi_p,
                                              double rabi_c,
                                              double gamma_3,
                                              double gamma_2,
                                              double *out_re,
                                              double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABSHELL_H */
