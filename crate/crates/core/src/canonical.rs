//! Transformation kernels between conjugate pairs and the numeric checks
//! that pin down their form.
//!
//! A kernel `K(u, w)` is the overlap between eigenstates of a conjugate pair
//! (`⟨x|p⟩` or `⟨t_s|−E_s⟩`). Canonical invariance forces the squaring
//! relations
//!
//! ```text
//! K′(√2 u, √2 w) = K′(u, w)²        (position/momentum)
//! K′(u, 2w)      = K′(u, w)²        (doubled rest energy)
//! K′(2u, w)      = K′(u, w)²        (doubled proper time, photon partner)
//! ```
//!
//! with `K′ = K/K(0, 0)`, whose only smooth solutions are
//! `K = a·exp(α u w)`. The checks here measure how far a kernel is from
//! satisfying them, recover `α` by finite differences, and test the
//! kernel matrix built with `α = i/ħ` against `Ê_s = iħ ∂/∂t_s`.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Overlap amplitude between eigenstates of a conjugate pair.
pub trait TransformKernel {
    fn eval(&self, u: f64, w: f64) -> Complex64;

    /// `⟨0|0⟩`
    fn origin(&self) -> Complex64 {
        self.eval(0.0, 0.0)
    }

    /// `K′(u, w) = K(u, w)/K(0, 0)`
    fn reduced(&self, u: f64, w: f64) -> Complex64 {
        self.eval(u, w) / self.origin()
    }
}

impl<F> TransformKernel for F
where
    F: Fn(f64, f64) -> Complex64,
{
    fn eval(&self, u: f64, w: f64) -> Complex64 {
        self(u, w)
    }
}

/// `K(u, w) = a·exp(α u w)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeKernel {
    alpha: Complex64,
    prefactor: Complex64,
}

impl AmplitudeKernel {
    pub fn new(alpha: Complex64, prefactor: Complex64) -> Result<Self> {
        if prefactor == Complex64::new(0.0, 0.0) || !prefactor.is_finite() || !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "kernel needs finite alpha and nonzero prefactor (alpha = {alpha}, a = {prefactor})"
            )));
        }
        Ok(Self { alpha, prefactor })
    }

    /// `⟨x|p⟩ = (2πħ)^(−½) exp(i p x/ħ)`
    pub fn position_momentum(hbar: f64) -> Self {
        Self {
            alpha: Complex64::new(0.0, 1.0 / hbar),
            prefactor: Complex64::new((2.0 * std::f64::consts::PI * hbar).powf(-0.5), 0.0),
        }
    }

    /// `⟨t_s|E_s⟩ = a·exp(−i E_s t_s/ħ)`, evaluated as `K(t_s, −E_s)`.
    pub fn proper_time_energy(hbar: f64, prefactor: Complex64) -> Result<Self> {
        Self::new(Complex64::new(0.0, 1.0 / hbar), prefactor)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn prefactor(&self) -> Complex64 {
        self.prefactor
    }
}

impl TransformKernel for AmplitudeKernel {
    fn eval(&self, u: f64, w: f64) -> Complex64 {
        self.prefactor * (self.alpha * (u * w)).exp()
    }

    fn origin(&self) -> Complex64 {
        self.prefactor
    }
}

/// Which squaring relation to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquaringVariant {
    /// `K′(√2u, √2w) = K′(u, w)²`
    Symmetric,
    /// `K′(u, 2w) = K′(u, w)²`
    DoubledConjugate,
    /// `K′(2u, w) = K′(u, w)²`
    DoubledCoordinate,
}

/// `|K′(scaled) − K′(u, w)²|` for the chosen relation.
pub fn check_squaring(
    kernel: &impl TransformKernel,
    u: f64,
    w: f64,
    variant: SquaringVariant,
) -> f64 {
    let (su, sw) = match variant {
        SquaringVariant::Symmetric => (SQRT_2 * u, SQRT_2 * w),
        SquaringVariant::DoubledConjugate => (u, 2.0 * w),
        SquaringVariant::DoubledCoordinate => (2.0 * u, w),
    };
    let base = kernel.reduced(u, w);
    (kernel.reduced(su, sw) - base * base).norm()
}

pub fn check_squaring_xp(kernel: &impl TransformKernel, x: f64, p: f64) -> f64 {
    check_squaring(kernel, x, p, SquaringVariant::Symmetric)
}

/// Stencil controls for [`extract_alpha`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaStencil {
    /// Largest half-width; `None` picks one from a coarse probe of `|α|`.
    pub initial: Option<f64>,
    /// Number of halvings, at least 6.
    pub levels: usize,
    /// Allowed change between the last two extrapolated estimates, relative
    /// to `max(1, |α|)`.
    pub tolerance: f64,
}

impl Default for AlphaStencil {
    fn default() -> Self {
        Self {
            initial: None,
            levels: 8,
            tolerance: 1e-9,
        }
    }
}

fn mixed_log_derivative(kernel: &impl TransformKernel, h: f64) -> Complex64 {
    let f = |u: f64, w: f64| kernel.reduced(u, w).ln();
    (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h)
}

/// Estimates `α = ∂² log K′/∂u∂w` at the origin.
///
/// A four-point central stencil is evaluated on half-widths `δ, δ/2, …`
/// and the sequence is Richardson-extrapolated (error `O(δ²)` per level).
pub fn extract_alpha(kernel: &impl TransformKernel, stencil: AlphaStencil) -> Result<Complex64> {
    if stencil.levels < 6 {
        return Err(Error::InvalidArgument(format!(
            "need at least 6 stencil levels, got {}",
            stencil.levels
        )));
    }
    let initial = match stencil.initial {
        Some(h) if h.is_finite() && h > 0.0 => h,
        Some(h) => return Err(Error::InvalidArgument(format!("stencil width {h}"))),
        None => {
            let probe = mixed_log_derivative(kernel, 1e-3).norm();
            if probe.is_finite() && probe > 1.0 {
                0.5 / probe.sqrt()
            } else {
                0.5
            }
        }
    };

    let mut table: Vec<Vec<Complex64>> = Vec::with_capacity(stencil.levels);
    let mut h = initial;
    for level in 0..stencil.levels {
        let mut row = vec![mixed_log_derivative(kernel, h)];
        let mut factor = 4.0;
        for j in 0..level {
            let refined = row[j] + (row[j] - table[level - 1][j]) / (factor - 1.0);
            row.push(refined);
            factor *= 4.0;
        }
        table.push(row);
        h /= 2.0;
    }

    let last = table[stencil.levels - 1][stencil.levels - 1];
    let prev = table[stencil.levels - 2][stencil.levels - 2];
    let change = (last - prev).norm();
    if !last.is_finite() || change > stencil.tolerance * last.norm().max(1.0) {
        return Err(Error::NoConvergence { change });
    }
    Ok(last)
}

/// Uniform proper-time nodes on `[0, t]`, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct ProperTimeAxis {
    t: f64,
    nodes: Vec<f64>,
}

impl ProperTimeAxis {
    pub const MIN_NODES: usize = 16;

    pub fn new(t: f64, m: usize) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidArgument(format!("reference time {t}")));
        }
        if m < Self::MIN_NODES {
            return Err(Error::TooFewNodes {
                needed: Self::MIN_NODES,
                found: m,
            });
        }
        let step = t / (m - 1) as f64;
        let mut nodes: Vec<f64> = (0..m).map(|j| j as f64 * step).collect();
        nodes[m - 1] = t;
        Ok(Self { t, nodes })
    }

    pub fn reference_time(&self) -> f64 {
        self.t
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.t / (self.nodes.len() - 1) as f64
    }
}

/// Discretized `⟨t_s|E_s⟩` on proper-time × energy nodes, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    axis: ProperTimeAxis,
    energies: Vec<f64>,
    prefactor: Complex64,
    entries: Vec<Complex64>,
}

impl KernelMatrix {
    /// Entries `a·exp(−i E_k t_j/ħ)`.
    pub fn standard(
        axis: ProperTimeAxis,
        energies: Vec<f64>,
        prefactor: Complex64,
        hbar: f64,
    ) -> Result<Self> {
        check_energies(&energies)?;
        let entries = axis
            .nodes()
            .iter()
            .flat_map(|&t| {
                energies
                    .iter()
                    .map(move |&e| reference_entry(prefactor, e, t, hbar))
            })
            .collect();
        Ok(Self {
            axis,
            energies,
            prefactor,
            entries,
        })
    }

    /// Entries `K(t_j, −E_k)` for an arbitrary exponential kernel, e.g. one
    /// with a planted real part in `α`.
    pub fn from_kernel(
        axis: ProperTimeAxis,
        energies: Vec<f64>,
        kernel: &AmplitudeKernel,
    ) -> Result<Self> {
        check_energies(&energies)?;
        let entries = axis
            .nodes()
            .iter()
            .flat_map(|&t| energies.iter().map(move |&e| kernel.eval(t, -e)))
            .collect();
        Ok(Self {
            axis,
            energies,
            prefactor: kernel.prefactor(),
            entries,
        })
    }

    pub fn axis(&self) -> &ProperTimeAxis {
        &self.axis
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn prefactor(&self) -> Complex64 {
        self.prefactor
    }

    pub fn rows(&self) -> usize {
        self.axis.len()
    }

    pub fn cols(&self) -> usize {
        self.energies.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols() + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        let cols = self.cols();
        &self.entries[row * cols..(row + 1) * cols]
    }
}

fn reference_entry(prefactor: Complex64, energy: f64, t: f64, hbar: f64) -> Complex64 {
    prefactor * Complex64::cis(-energy * t / hbar)
}

fn check_energies(energies: &[f64]) -> Result<()> {
    if energies.is_empty() {
        return Err(Error::InvalidArgument("no energies".into()));
    }
    if energies.iter().any(|e| !e.is_finite()) {
        return Err(Error::InvalidArgument("non-finite energy".into()));
    }
    Ok(())
}

/// `max|K| / min|K|` over the matrix. Equals 1 exactly when the kernel has
/// no preferred proper time, i.e. `Re α = 0`.
pub fn check_alpha_imaginary(matrix: &KernelMatrix) -> Result<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for (idx, z) in matrix.entries.iter().enumerate() {
        let m = z.norm();
        if m == 0.0 {
            return Err(Error::ZeroEntry {
                row: idx / matrix.cols(),
                col: idx % matrix.cols(),
            });
        }
        lo = lo.min(m);
        hi = hi.max(m);
    }
    Ok(hi / lo)
}

/// Relative residual of `Ê_s Ψ = iħ ∂Ψ/∂t_s` on interior nodes for
/// `Ψ(t_j) = Σ_k c_k K[j][k]`, with a central difference for `∂/∂t_s`.
pub fn check_energy_as_time_derivative(
    matrix: &KernelMatrix,
    coefficients: &[Complex64],
    hbar: f64,
) -> Result<f64> {
    if matrix.rows() < 3 {
        return Err(Error::TooFewNodes {
            needed: 3,
            found: matrix.rows(),
        });
    }
    if coefficients.len() != matrix.cols() {
        return Err(Error::LengthMismatch {
            expected: matrix.cols(),
            found: coefficients.len(),
        });
    }
    let state: Vec<Complex64> = (0..matrix.rows())
        .map(|j| {
            matrix
                .row(j)
                .iter()
                .zip(coefficients)
                .map(|(k, c)| k * c)
                .sum()
        })
        .collect();
    let energy_state: Vec<Complex64> = (0..matrix.rows())
        .map(|j| {
            matrix
                .row(j)
                .iter()
                .zip(coefficients)
                .zip(&matrix.energies)
                .map(|((k, c), e)| k * c * *e)
                .sum()
        })
        .collect();

    let h = matrix.axis.spacing();
    let ih = Complex64::new(0.0, hbar);
    let mut diff = 0.0;
    let mut scale = 0.0;
    for j in 1..matrix.rows() - 1 {
        let derivative = (state[j + 1] - state[j - 1]) / (2.0 * h);
        diff += (energy_state[j] - ih * derivative).norm_sqr();
        scale += energy_state[j].norm_sqr();
    }
    if scale == 0.0 {
        return Err(Error::DegenerateState(
            "Ê_s Ψ vanishes on the interior nodes",
        ));
    }
    Ok((diff / scale).sqrt())
}

/// Residuals of [`check_energy_as_time_derivative`] at `m` nodes and at
/// `2(m − 1) + 1` nodes (half the spacing), plus their ratio.
pub fn time_derivative_convergence(
    t: f64,
    m: usize,
    energies: &[f64],
    coefficients: &[Complex64],
    prefactor: Complex64,
    hbar: f64,
) -> Result<(f64, f64, f64)> {
    let coarse = KernelMatrix::standard(
        ProperTimeAxis::new(t, m)?,
        energies.to_vec(),
        prefactor,
        hbar,
    )?;
    let fine = KernelMatrix::standard(
        ProperTimeAxis::new(t, 2 * (m - 1) + 1)?,
        energies.to_vec(),
        prefactor,
        hbar,
    )?;
    let r1 = check_energy_as_time_derivative(&coarse, coefficients, hbar)?;
    let r2 = check_energy_as_time_derivative(&fine, coefficients, hbar)?;
    Ok((r1, r2, r1 / r2))
}

/// Whether the `t_s = t` row equals the reference-frame kernel
/// `a·exp(−i E t/ħ)` entry for entry.
pub fn check_special_case_t(matrix: &KernelMatrix, hbar: f64) -> bool {
    let last = matrix.rows() - 1;
    let t = matrix.axis.nodes()[last];
    if t != matrix.axis.reference_time() {
        return false;
    }
    matrix
        .row(last)
        .iter()
        .zip(&matrix.energies)
        .all(|(z, &e)| *z == reference_entry(matrix.prefactor, e, t, hbar))
}

/// Axis along which [`log_quadratic_coefficient`] scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelAxis {
    Coordinate,
    Conjugate,
}

/// Least-squares quadratic fit of `log K′` along one axis through
/// `fixed` on the other; returns `|c₂|`. Zero for a kernel whose log is
/// linear in each variable separately.
pub fn log_quadratic_coefficient(
    kernel: &impl TransformKernel,
    axis: KernelAxis,
    fixed: f64,
    half_range: f64,
    samples: usize,
) -> Result<f64> {
    if samples < 5 {
        return Err(Error::TooFewNodes {
            needed: 5,
            found: samples,
        });
    }
    let xs: Vec<f64> = (0..samples)
        .map(|i| -half_range + 2.0 * half_range * i as f64 / (samples - 1) as f64)
        .collect();
    let ys: Vec<Complex64> = xs
        .iter()
        .map(|&s| match axis {
            KernelAxis::Coordinate => kernel.reduced(s, fixed).ln(),
            KernelAxis::Conjugate => kernel.reduced(fixed, s).ln(),
        })
        .collect();
    let re = quadratic_fit(&xs, &ys.iter().map(|z| z.re).collect::<Vec<_>>());
    let im = quadratic_fit(&xs, &ys.iter().map(|z| z.im).collect::<Vec<_>>());
    Ok(Complex64::new(re[2], im[2]).norm())
}

/// Coefficients `[c₀, c₁, c₂]` of the least-squares quadratic, using an
/// orthogonal basis on the (symmetric) sample set.
fn quadratic_fit(xs: &[f64], ys: &[f64]) -> [f64; 3] {
    let n = xs.len() as f64;
    let mean_sq = xs.iter().map(|x| x * x).sum::<f64>() / n;
    // basis 1, x, x² − ⟨x²⟩ is orthogonal for symmetric nodes
    let q: Vec<f64> = xs.iter().map(|x| x * x - mean_sq).collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let b0 = ys.iter().sum::<f64>() / n;
    let b1 = dot(xs, ys) / dot(xs, xs);
    let c2 = dot(&q, ys) / dot(&q, &q);
    [b0 - c2 * mean_sq, b1, c2]
}
