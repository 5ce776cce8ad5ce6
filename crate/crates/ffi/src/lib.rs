//! C ABI for `propertime`.
//!
//! Every fallible function returns a [`PtStatus`]; on failure the message is
//! available from [`pt_last_error_message`] on the same thread. Objects are
//! opaque handles created by `pt_*_new`-style functions and released with
//! the matching `pt_*_free`. Handles are not thread-safe to mutate
//! concurrently but may be read from several threads.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;

use num_complex::Complex64;
use propertime::frames::{
    proper_time_of, semiclassical_phase, Interpolation, Quadrature, QuadratureOptions, Trajectory,
};
use propertime::operators::{commutator_xp_expectation, proper_time_op};
use propertime::propagators::{
    dirac_step_matrix, PropagatorKind, PropagatorSpec, ScalarPropagator,
};
use propertime::scenario::{emit, parse_scenario, run, OutputFormat};
use propertime::{
    Error, ParticleSpec, PhysicalConstants, Representation, SpatialGrid, WaveFunction,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// A numerical precondition failed (edge decay, convergence, range).
    Precondition = 3,
    BufferTooSmall = 4,
    Io = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtRepresentation {
    Position = 0,
    Momentum = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtPropagatorKind {
    Schrodinger = 0,
    Relativistic = 1,
    ProperTime = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtInterpolation {
    Linear = 0,
    CubicHermite = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtQuadrature {
    Trapezoid = 0,
    Simpson = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtFormat {
    Csv = 0,
    Json = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PtComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for PtComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<PtComplex> for Complex64 {
    fn from(z: PtComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Proper time, action and phase integrals at one reference time.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PtFramePhase {
    pub proper_time: f64,
    pub action: f64,
    pub energy_phase: f64,
    pub spatial_phase: f64,
    pub position: f64,
    pub factorization_residual: f64,
}

pub struct PtGrid {
    inner: SpatialGrid,
}

pub struct PtWaveFunction {
    inner: WaveFunction,
}

pub struct PtPropagator {
    inner: ScalarPropagator,
}

pub struct PtTrajectory {
    inner: Trajectory,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure {
    status: PtStatus,
    message: String,
}

impl Failure {
    fn new(status: PtStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn null(name: &str) -> Self {
        Self::new(PtStatus::NullPointer, format!("{name} is null"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotEdgeDecayed { .. }
            | Error::DegenerateState(_)
            | Error::NoConvergence { .. }
            | Error::Superluminal { .. }
            | Error::OutOfRange { .. }
            | Error::ZeroEntry { .. } => PtStatus::Precondition,
            _ => PtStatus::InvalidArgument,
        };
        Self::new(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> PtStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_last_error();
            PtStatus::Ok
        }
        Ok(Err(failure)) => {
            set_last_error(failure.message);
            failure.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            PtStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(ptr: *const T, name: &str) -> FfiResult<&'a T> {
    ptr.as_ref().ok_or_else(|| Failure::null(name))
}

unsafe fn deref_mut<'a, T>(ptr: *mut T, name: &str) -> FfiResult<&'a mut T> {
    ptr.as_mut().ok_or_else(|| Failure::null(name))
}

unsafe fn write_out<T>(out: *mut T, name: &str, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure::null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn out_slice<'a, T>(
    ptr: *mut T,
    len: usize,
    needed: usize,
    name: &str,
) -> FfiResult<&'a mut [T]> {
    if ptr.is_null() {
        return Err(Failure::null(name));
    }
    if len < needed {
        return Err(Failure::new(
            PtStatus::BufferTooSmall,
            format!("{name} holds {len} elements, {needed} needed"),
        ));
    }
    Ok(std::slice::from_raw_parts_mut(ptr, needed))
}

unsafe fn in_slice<'a, T>(ptr: *const T, len: usize, name: &str) -> FfiResult<&'a [T]> {
    if ptr.is_null() {
        return Err(Failure::null(name));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn c_path<'a>(ptr: *const c_char, name: &str) -> FfiResult<&'a Path> {
    if ptr.is_null() {
        return Err(Failure::null(name));
    }
    let s = CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Failure::new(PtStatus::InvalidArgument, format!("{name} is not UTF-8")))?;
    Ok(Path::new(s))
}

fn representation(rep: PtRepresentation) -> Representation {
    match rep {
        PtRepresentation::Position => Representation::Position,
        PtRepresentation::Momentum => Representation::Momentum,
    }
}

fn quadrature(rule: PtQuadrature, panels: usize) -> FfiResult<QuadratureOptions> {
    let rule = match rule {
        PtQuadrature::Trapezoid => Quadrature::Trapezoid,
        PtQuadrature::Simpson => Quadrature::Simpson,
    };
    Ok(QuadratureOptions::new(rule, panels)?)
}

fn into_handle<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// NUL-terminated) and returns its full length in bytes, excluding the NUL.
/// Returns 0 when the last call succeeded. `buf` may be null to query the
/// length.
///
/// # Safety
/// `buf` must be null or point to at least `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pt_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        let Some(msg) = slot.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a periodic grid of `n` points (a power of two) on
/// `[x_min, x_max)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn pt_grid_new(
    n: usize,
    x_min: f64,
    x_max: f64,
    hbar: f64,
    c: f64,
    out: *mut *mut PtGrid,
) -> PtStatus {
    guard(|| {
        let constants = PhysicalConstants::new(hbar, c)?;
        let grid = SpatialGrid::new(n, x_min, x_max, constants)?;
        write_out(out, "out", into_handle(PtGrid { inner: grid }))
    })
}

/// # Safety
/// `grid` must be null or a handle from [`pt_grid_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pt_grid_free(grid: *mut PtGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Number of grid points, or 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pt_grid_len(grid: *const PtGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.inner.len())
}

/// Writes the `n` grid positions.
///
/// # Safety
/// `grid` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pt_grid_positions(
    grid: *const PtGrid,
    out: *mut f64,
    len: usize,
) -> PtStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.inner;
        out_slice(out, len, g.len(), "out")?.copy_from_slice(&g.positions());
        Ok(())
    })
}

/// Writes the `n` momenta in FFT order (the order used by momentum-space
/// amplitudes).
///
/// # Safety
/// `grid` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pt_grid_momenta(
    grid: *const PtGrid,
    out: *mut f64,
    len: usize,
) -> PtStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.inner;
        out_slice(out, len, g.len(), "out")?.copy_from_slice(&g.momenta());
        Ok(())
    })
}

/// Normalized Gaussian with density standard deviation `sigma`, centred at
/// `x0` with mean momentum `p0`.
///
/// # Safety
/// `grid` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_wavefunction_gaussian(
    grid: *const PtGrid,
    x0: f64,
    sigma: f64,
    p0: f64,
    out: *mut *mut PtWaveFunction,
) -> PtStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.inner;
        let psi = WaveFunction::gaussian(g, x0, sigma, p0)?;
        write_out(out, "out", into_handle(PtWaveFunction { inner: psi }))
    })
}

/// Wraps caller-supplied amplitudes (copied) in the given representation.
///
/// # Safety
/// `grid` must be a live handle; `amplitudes` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn pt_wavefunction_from_amplitudes(
    grid: *const PtGrid,
    amplitudes: *const PtComplex,
    len: usize,
    rep: PtRepresentation,
    out: *mut *mut PtWaveFunction,
) -> PtStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.inner;
        let amps: Vec<Complex64> = in_slice(amplitudes, len, "amplitudes")?
            .iter()
            .map(|&z| z.into())
            .collect();
        let psi = WaveFunction::new(*g, amps, representation(rep))?;
        write_out(out, "out", into_handle(PtWaveFunction { inner: psi }))
    })
}

/// # Safety
/// `psi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pt_wavefunction_free(psi: *mut PtWaveFunction) {
    if !psi.is_null() {
        drop(Box::from_raw(psi));
    }
}

/// Copies the amplitudes in the requested representation.
///
/// # Safety
/// `psi` must be a live handle; `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn pt_wavefunction_amplitudes(
    psi: *const PtWaveFunction,
    rep: PtRepresentation,
    out: *mut PtComplex,
    len: usize,
) -> PtStatus {
    guard(|| {
        let psi = &deref(psi, "psi")?.inner;
        let view = psi.to_representation(representation(rep));
        let dst = out_slice(out, len, view.amplitudes().len(), "out")?;
        for (d, &z) in dst.iter_mut().zip(view.amplitudes()) {
            *d = z.into();
        }
        Ok(())
    })
}

/// `‖ψ‖` with the grid weight of its representation.
///
/// # Safety
/// `psi` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_wavefunction_norm(
    psi: *const PtWaveFunction,
    out: *mut f64,
) -> PtStatus {
    guard(|| write_out(out, "out", deref(psi, "psi")?.inner.norm()))
}

/// `⟨x⟩`, `⟨p⟩` and the position width. Any output pointer may be null.
///
/// # Safety
/// `psi` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_wavefunction_moments(
    psi: *const PtWaveFunction,
    mean_x: *mut f64,
    mean_p: *mut f64,
    width: *mut f64,
) -> PtStatus {
    guard(|| {
        let psi = &deref(psi, "psi")?.inner;
        if !mean_x.is_null() {
            *mean_x = psi.mean_position();
        }
        if !mean_p.is_null() {
            *mean_p = psi.mean_momentum();
        }
        if !width.is_null() {
            *width = psi.width();
        }
        Ok(())
    })
}

/// `⟨ψ|[x̂, p̂]|ψ⟩/⟨ψ|ψ⟩`; fails with `Precondition` for states that are
/// not edge-decayed.
///
/// # Safety
/// `psi` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_commutator_xp(
    psi: *const PtWaveFunction,
    out: *mut PtComplex,
) -> PtStatus {
    guard(|| {
        let z = commutator_xp_expectation(&deref(psi, "psi")?.inner)?;
        write_out(out, "out", z.into())
    })
}

/// Eigenvalues `t·E_s/E(p)` of the proper-time operator at each grid
/// momentum (FFT order).
///
/// # Safety
/// `grid` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pt_proper_time_eigenvalues(
    grid: *const PtGrid,
    mass: f64,
    t: f64,
    out: *mut f64,
    len: usize,
) -> PtStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.inner;
        if !t.is_finite() {
            return Err(Failure::new(PtStatus::InvalidArgument, format!("t = {t}")));
        }
        let particle = ParticleSpec::new(mass, g.constants())?;
        let values = proper_time_op(g, &particle, t).real_values();
        out_slice(out, len, values.len(), "out")?.copy_from_slice(&values);
        Ok(())
    })
}

/// Exact spectral propagator for one scalar limit.
///
/// # Safety
/// `grid` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_propagator_new(
    grid: *const PtGrid,
    kind: PtPropagatorKind,
    mass: f64,
    dt: f64,
    out: *mut *mut PtPropagator,
) -> PtStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.inner;
        let particle = ParticleSpec::new(mass, g.constants())?;
        let kind = match kind {
            PtPropagatorKind::Schrodinger => PropagatorKind::Schrodinger,
            PtPropagatorKind::Relativistic => PropagatorKind::RelativisticSqrt,
            PtPropagatorKind::ProperTime => PropagatorKind::ProperTimePhase,
        };
        let spec = PropagatorSpec::new(kind, particle, dt)?;
        let prop = ScalarPropagator::new(g, spec)?;
        write_out(out, "out", into_handle(PtPropagator { inner: prop }))
    })
}

/// # Safety
/// `prop` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pt_propagator_free(prop: *mut PtPropagator) {
    if !prop.is_null() {
        drop(Box::from_raw(prop));
    }
}

/// Advances `psi` in place by `steps` steps.
///
/// # Safety
/// Both handles must be live; `psi` must not be shared with another thread.
#[no_mangle]
pub unsafe extern "C" fn pt_propagator_evolve(
    prop: *const PtPropagator,
    psi: *mut PtWaveFunction,
    steps: usize,
) -> PtStatus {
    guard(|| {
        let prop = &deref(prop, "prop")?.inner;
        let psi = deref_mut(psi, "psi")?;
        psi.inner = prop.evolve(&psi.inner, steps)?;
        Ok(())
    })
}

/// The 2×2 Dirac step `exp(−i H(p) dt/ħ)` in row-major order.
///
/// # Safety
/// `out` must hold 4 values.
#[no_mangle]
pub unsafe extern "C" fn pt_dirac_step_matrix(
    mass: f64,
    hbar: f64,
    c: f64,
    p: f64,
    dt: f64,
    out: *mut PtComplex,
) -> PtStatus {
    guard(|| {
        let particle = ParticleSpec::new(mass, PhysicalConstants::new(hbar, c)?)?;
        if !(p.is_finite() && dt.is_finite()) {
            return Err(Failure::new(
                PtStatus::InvalidArgument,
                "non-finite p or dt",
            ));
        }
        let m = dirac_step_matrix(&particle, p, dt);
        let dst = out_slice(out, 4, 4, "out")?;
        for (d, z) in dst.iter_mut().zip(m.iter().flatten()) {
            *d = (*z).into();
        }
        Ok(())
    })
}

/// Velocity table `v(t)` from `len` samples starting at `t = 0`.
///
/// # Safety
/// `times` and `velocities` must each hold `len` doubles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pt_trajectory_new(
    times: *const f64,
    velocities: *const f64,
    len: usize,
    interpolation: PtInterpolation,
    c: f64,
    out: *mut *mut PtTrajectory,
) -> PtStatus {
    guard(|| {
        let t = in_slice(times, len, "times")?;
        let v = in_slice(velocities, len, "velocities")?;
        let interp = match interpolation {
            PtInterpolation::Linear => Interpolation::Linear,
            PtInterpolation::CubicHermite => Interpolation::CubicHermite,
        };
        let samples = t.iter().copied().zip(v.iter().copied()).collect();
        let traj = Trajectory::new(samples, interp, c)?;
        write_out(out, "out", into_handle(PtTrajectory { inner: traj }))
    })
}

/// # Safety
/// `traj` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pt_trajectory_free(traj: *mut PtTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// `∫₀ᵗ √(1 − v²/c²) dt′`.
///
/// # Safety
/// `traj` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_trajectory_proper_time(
    traj: *const PtTrajectory,
    t: f64,
    rule: PtQuadrature,
    panels: usize,
    out: *mut f64,
) -> PtStatus {
    guard(|| {
        let traj = &deref(traj, "traj")?.inner;
        let ts = proper_time_of(traj, t, quadrature(rule, panels)?)?;
        write_out(out, "out", ts)
    })
}

/// Semiclassical phase integrals for a particle of mass `mass` (> 0).
///
/// # Safety
/// `traj` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_trajectory_phases(
    traj: *const PtTrajectory,
    mass: f64,
    hbar: f64,
    t: f64,
    rule: PtQuadrature,
    panels: usize,
    out: *mut PtFramePhase,
) -> PtStatus {
    guard(|| {
        use propertime::frames::VelocityProfile;
        let traj = &deref(traj, "traj")?.inner;
        let constants = PhysicalConstants::new(hbar, traj.speed_of_light())?;
        let particle = ParticleSpec::new(mass, constants)?;
        let r = semiclassical_phase(traj, &particle, &[t], quadrature(rule, panels)?)?;
        write_out(
            out,
            "out",
            PtFramePhase {
                proper_time: r.proper_time[0],
                action: r.action[0],
                energy_phase: r.energy_phase[0],
                spatial_phase: r.spatial_phase[0],
                position: r.position[0],
                factorization_residual: r.factorization_residual[0],
            },
        )
    })
}

/// Parses and runs a scenario file. When `out_path` is non-null the report
/// (without timings) is written there. `passed` receives the aggregate
/// verdict.
///
/// # Safety
/// `path` and non-null `out_path` must be NUL-terminated strings; `passed`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_run_scenario(
    path: *const c_char,
    format: PtFormat,
    out_path: *const c_char,
    passed: *mut bool,
) -> PtStatus {
    guard(|| {
        let path = c_path(path, "path")?;
        let out = if out_path.is_null() {
            None
        } else {
            Some(c_path(out_path, "out_path")?)
        };
        if passed.is_null() {
            return Err(Failure::null("passed"));
        }
        let scenario = parse_scenario(path)
            .map_err(|e| Failure::new(PtStatus::InvalidArgument, e.to_string()))?;
        let mut report = run(&scenario).map_err(|e| {
            let status = Failure::from(e.source.clone()).status;
            Failure::new(status, e.to_string())
        })?;
        report.timings.clear();
        if let Some(out) = out {
            let format = match format {
                PtFormat::Csv => OutputFormat::Csv,
                PtFormat::Json => OutputFormat::Json,
            };
            emit(&report, format, Some(out))
                .map_err(|e| Failure::new(PtStatus::Io, e.to_string()))?;
        }
        *passed = report.passed;
        Ok(())
    })
}
