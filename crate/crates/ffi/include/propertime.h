#ifndef PROPERTIME_H
#define PROPERTIME_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PtStatus {
  PT_STATUS_OK = 0,
  PT_STATUS_NULL_POINTER = 1,
  PT_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A numerical precondition failed (edge decay, convergence, range).
   */
  PT_STATUS_PRECONDITION = 3,
  PT_STATUS_BUFFER_TOO_SMALL = 4,
  PT_STATUS_IO = 5,
  PT_STATUS_PANIC = 6,
} PtStatus;

typedef enum PtRepresentation {
  PT_REPRESENTATION_POSITION = 0,
  PT_REPRESENTATION_MOMENTUM = 1,
} PtRepresentation;

typedef enum PtPropagatorKind {
  PT_PROPAGATOR_KIND_SCHRODINGER = 0,
  PT_PROPAGATOR_KIND_RELATIVISTIC = 1,
  PT_PROPAGATOR_KIND_PROPER_TIME = 2,
} PtPropagatorKind;

typedef enum PtInterpolation {
  PT_INTERPOLATION_LINEAR = 0,
  PT_INTERPOLATION_CUBIC_HERMITE = 1,
} PtInterpolation;

typedef enum PtQuadrature {
  PT_QUADRATURE_TRAPEZOID = 0,
  PT_QUADRATURE_SIMPSON = 1,
} PtQuadrature;

typedef enum PtFormat {
  PT_FORMAT_CSV = 0,
  PT_FORMAT_JSON = 1,
} PtFormat;

typedef struct PtGrid PtGrid;

typedef struct PtPropagator PtPropagator;

typedef struct PtTrajectory PtTrajectory;

typedef struct PtWaveFunction PtWaveFunction;

typedef struct PtComplex {
  double re;
  double im;
} PtComplex;

/**
 * Proper time, action and phase integrals at one reference time.
 */
typedef struct PtFramePhase {
  double proper_time;
  double action;
  double energy_phase;
  double spatial_phase;
  double position;
  double factorization_residual;
} PtFramePhase;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` (truncated,
 * NUL-terminated) and returns its full length in bytes, excluding the NUL.
 * Returns 0 when the last call succeeded. `buf` may be null to query the
 * length.
 *
 * # Safety
 * `buf` must be null or point to at least `len` writable bytes.
 */
size_t pt_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pt_version(void);

/**
 * Creates a periodic grid of `n` points (a power of two) on
 * `[x_min, x_max)`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum PtStatus pt_grid_new(size_t n,
                          double x_min,
                          double x_max,
                          double hbar,
                          double c,
                          struct PtGrid **out);

/**
 * # Safety
 * `grid` must be null or a handle from [`pt_grid_new`] not yet freed.
 */
void pt_grid_free(struct PtGrid *grid);

/**
 * Number of grid points, or 0 for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
size_t pt_grid_len(const struct PtGrid *grid);

/**
 * Writes the `n` grid positions.
 *
 * # Safety
 * `grid` must be a live handle; `out` must hold `len` doubles.
 */
enum PtStatus pt_grid_positions(const struct PtGrid *grid, double *out, size_t len);

/**
 * Writes the `n` momenta in FFT order (the order used by momentum-space
 * amplitudes).
 *
 * # Safety
 * `grid` must be a live handle; `out` must hold `len` doubles.
 */
enum PtStatus pt_grid_momenta(const struct PtGrid *grid, double *out, size_t len);

/**
 * Normalized Gaussian with density standard deviation `sigma`, centred at
 * `x0` with mean momentum `p0`.
 *
 * # Safety
 * `grid` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_wavefunction_gaussian(const struct PtGrid *grid,
                                       double x0,
                                       double sigma,
                                       double p0,
                                       struct PtWaveFunction **out);

/**
 * Wraps caller-supplied amplitudes (copied) in the given representation.
 *
 * # Safety
 * `grid` must be a live handle; `amplitudes` must hold `len` values.
 */
enum PtStatus pt_wavefunction_from_amplitudes(const struct PtGrid *grid,
                                              const struct PtComplex *amplitudes,
                                              size_t len,
                                              enum PtRepresentation rep,
                                              struct PtWaveFunction **out);

/**
 * # Safety
 * `psi` must be null or a live handle.
 */
void pt_wavefunction_free(struct PtWaveFunction *psi);

/**
 * Copies the amplitudes in the requested representation.
 *
 * # Safety
 * `psi` must be a live handle; `out` must hold `len` values.
 */
enum PtStatus pt_wavefunction_amplitudes(const struct PtWaveFunction *psi,
                                         enum PtRepresentation rep,
                                         struct PtComplex *out,
                                         size_t len);

/**
 * `‖ψ‖` with the grid weight of its representation.
 *
 * # Safety
 * `psi` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_wavefunction_norm(const struct PtWaveFunction *psi, double *out);

/**
 * `⟨x⟩`, `⟨p⟩` and the position width. Any output pointer may be null.
 *
 * # Safety
 * `psi` must be a live handle; non-null outputs must be writable.
 */
enum PtStatus pt_wavefunction_moments(const struct PtWaveFunction *psi,
                                      double *mean_x,
                                      double *mean_p,
                                      double *width);

/**
 * `⟨ψ|[x̂, p̂]|ψ⟩/⟨ψ|ψ⟩`; fails with `Precondition` for states that are
 * not edge-decayed.
 *
 * # Safety
 * `psi` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_commutator_xp(const struct PtWaveFunction *psi, struct PtComplex *out);

/**
 * Eigenvalues `t·E_s/E(p)` of the proper-time operator at each grid
 * momentum (FFT order).
 *
 * # Safety
 * `grid` must be a live handle; `out` must hold `len` doubles.
 */
enum PtStatus pt_proper_time_eigenvalues(const struct PtGrid *grid,
                                         double mass,
                                         double t,
                                         double *out,
                                         size_t len);

/**
 * Exact spectral propagator for one scalar limit.
 *
 * # Safety
 * `grid` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_propagator_new(const struct PtGrid *grid,
                                enum PtPropagatorKind kind,
                                double mass,
                                double dt,
                                struct PtPropagator **out);

/**
 * # Safety
 * `prop` must be null or a live handle.
 */
void pt_propagator_free(struct PtPropagator *prop);

/**
 * Advances `psi` in place by `steps` steps.
 *
 * # Safety
 * Both handles must be live; `psi` must not be shared with another thread.
 */
enum PtStatus pt_propagator_evolve(const struct PtPropagator *prop,
                                   struct PtWaveFunction *psi,
                                   size_t steps);

/**
 * The 2×2 Dirac step `exp(−i H(p) dt/ħ)` in row-major order.
 *
 * # Safety
 * `out` must hold 4 values.
 */
enum PtStatus pt_dirac_step_matrix(double mass,
                                   double hbar,
                                   double c,
                                   double p,
                                   double dt,
                                   struct PtComplex *out);

/**
 * Velocity table `v(t)` from `len` samples starting at `t = 0`.
 *
 * # Safety
 * `times` and `velocities` must each hold `len` doubles; `out` must be
 * writable.
 */
enum PtStatus pt_trajectory_new(const double *times,
                                const double *velocities,
                                size_t len,
                                enum PtInterpolation interpolation,
                                double c,
                                struct PtTrajectory **out);

/**
 * # Safety
 * `traj` must be null or a live handle.
 */
void pt_trajectory_free(struct PtTrajectory *traj);

/**
 * `∫₀ᵗ √(1 − v²/c²) dt′`.
 *
 * # Safety
 * `traj` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_trajectory_proper_time(const struct PtTrajectory *traj,
                                        double t,
                                        enum PtQuadrature rule,
                                        size_t panels,
                                        double *out);

/**
 * Semiclassical phase integrals for a particle of mass `mass` (> 0).
 *
 * # Safety
 * `traj` must be a live handle; `out` must be writable.
 */
enum PtStatus pt_trajectory_phases(const struct PtTrajectory *traj,
                                   double mass,
                                   double hbar,
                                   double t,
                                   enum PtQuadrature rule,
                                   size_t panels,
                                   struct PtFramePhase *out);

/**
 * Parses and runs a scenario file. When `out_path` is non-null the report
 * (without timings) is written there. `passed` receives the aggregate
 * verdict.
 *
 * # Safety
 * `path` and non-null `out_path` must be NUL-terminated strings; `passed`
 * must be writable.
 */
enum PtStatus pt_run_scenario(const char *path,
                              enum PtFormat format,
                              const char *out_path,
                              bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROPERTIME_H */
