//! Periodic one-dimensional grids, wavefunctions and the unitary
//! position/momentum transform.
//!
//! Amplitudes are box-normalized with quadrature weights: a position-space
//! state has `norm² = Σ |ψ_j|² dx`, a momentum-space state
//! `norm² = Σ |φ_k|² dp` with `dp = 2πħ/L`. The discrete transform
//!
//! ```text
//! φ_k = dx / √(2πħ) · Σ_j ψ_j exp(−i p_k x_j / ħ)
//! ```
//!
//! carries the plane-wave kernel `exp(i p x/ħ)` and is exactly unitary
//! between the two weighted inner products.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
}

impl PhysicalConstants {
    pub const NATURAL: PhysicalConstants = PhysicalConstants { hbar: 1.0, c: 1.0 };

    pub fn new(hbar: f64, c: f64) -> Result<Self> {
        check_positive("hbar", hbar)?;
        check_positive("c", c)?;
        Ok(Self { hbar, c })
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::NATURAL
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::BadConstant { name, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Representation {
    Position,
    Momentum,
}

/// Uniform periodic grid on `[x_min, x_max)`; point `n` wraps onto point 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    n: usize,
    x_min: f64,
    x_max: f64,
    constants: PhysicalConstants,
}

/// Grid in natural units.
pub fn make_grid(n: usize, x_min: f64, x_max: f64) -> Result<SpatialGrid> {
    SpatialGrid::new(n, x_min, x_max, PhysicalConstants::NATURAL)
}

impl SpatialGrid {
    pub fn new(n: usize, x_min: f64, x_max: f64, constants: PhysicalConstants) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::GridSize(n));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::DegenerateInterval { x_min, x_max });
        }
        PhysicalConstants::new(constants.hbar, constants.c)?;
        Ok(Self {
            n,
            x_min,
            x_max,
            constants,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn constants(&self) -> PhysicalConstants {
        self.constants
    }

    pub fn hbar(&self) -> f64 {
        self.constants.hbar
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.length() / self.n as f64
    }

    pub fn dp(&self) -> f64 {
        2.0 * PI * self.constants.hbar / self.length()
    }

    pub fn position(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.position(j)).collect()
    }

    /// Signed mode number of FFT bin `j`: `0, 1, …, n/2−1, −n/2, …, −1`.
    pub fn mode(&self, j: usize) -> i64 {
        let n = self.n as i64;
        let j = j as i64;
        if j < n / 2 {
            j
        } else {
            j - n
        }
    }

    pub fn momentum(&self, j: usize) -> f64 {
        self.mode(j) as f64 * self.dp()
    }

    /// Momentum values in FFT order.
    pub fn momenta(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.momentum(j)).collect()
    }

    /// FFT bin indices ordered by increasing momentum, for reporting.
    pub fn sorted_momentum_order(&self) -> Vec<usize> {
        let half = self.n / 2;
        (half..self.n).chain(0..half).collect()
    }

    /// Momenta in increasing order; pairs with [`Self::sorted_momentum_order`].
    pub fn momenta_sorted(&self) -> Vec<f64> {
        self.sorted_momentum_order()
            .into_iter()
            .map(|j| self.momentum(j))
            .collect()
    }

    /// Largest momentum magnitude on the grid (the unpaired `−n/2` mode).
    pub fn p_max(&self) -> f64 {
        (self.n / 2) as f64 * self.dp()
    }

    pub fn weight(&self, rep: Representation) -> f64 {
        match rep {
            Representation::Position => self.dx(),
            Representation::Momentum => self.dp(),
        }
    }
}

/// Planned transform between representations on a fixed grid.
///
/// Cheap to reuse across many steps; [`WaveFunction::to_momentum`] builds
/// one on the fly.
#[derive(Clone)]
pub struct SpectralTransform {
    grid: SpatialGrid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    // exp(−i p_k x_min / ħ) per bin
    origin_phase: Vec<Complex64>,
    forward_scale: f64,
    inverse_scale: f64,
}

impl std::fmt::Debug for SpectralTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralTransform")
            .field("grid", &self.grid)
            .finish_non_exhaustive()
    }
}

impl SpectralTransform {
    pub fn new(grid: &SpatialGrid) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(grid.len());
        let inverse = planner.plan_fft_inverse(grid.len());
        let hbar = grid.hbar();
        let origin_phase = (0..grid.len())
            .map(|j| Complex64::cis(-grid.momentum(j) * grid.x_min() / hbar))
            .collect();
        let root = (2.0 * PI * hbar).sqrt();
        Self {
            grid: *grid,
            forward,
            inverse,
            origin_phase,
            forward_scale: grid.dx() / root,
            inverse_scale: grid.dp() / root,
        }
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    /// In-place position → momentum amplitudes.
    pub fn forward_in_place(&self, data: &mut [Complex64]) {
        self.forward.process(data);
        for (z, phase) in data.iter_mut().zip(&self.origin_phase) {
            *z *= phase * self.forward_scale;
        }
    }

    /// In-place momentum → position amplitudes.
    pub fn inverse_in_place(&self, data: &mut [Complex64]) {
        for (z, phase) in data.iter_mut().zip(&self.origin_phase) {
            *z *= phase.conj() * self.inverse_scale;
        }
        self.inverse.process(data);
    }

    pub fn convert(&self, psi: &WaveFunction, target: Representation) -> Result<WaveFunction> {
        if psi.grid != self.grid {
            return Err(Error::GridMismatch);
        }
        let mut amplitudes = psi.amplitudes.clone();
        match (psi.representation, target) {
            (Representation::Position, Representation::Momentum) => {
                self.forward_in_place(&mut amplitudes)
            }
            (Representation::Momentum, Representation::Position) => {
                self.inverse_in_place(&mut amplitudes)
            }
            _ => {}
        }
        Ok(WaveFunction {
            grid: psi.grid,
            amplitudes,
            representation: target,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: SpatialGrid,
    amplitudes: Vec<Complex64>,
    representation: Representation,
}

impl WaveFunction {
    pub fn new(
        grid: SpatialGrid,
        amplitudes: Vec<Complex64>,
        representation: Representation,
    ) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: amplitudes.len(),
            });
        }
        if let Some(j) = amplitudes
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite(j));
        }
        Ok(Self {
            grid,
            amplitudes,
            representation,
        })
    }

    /// Position-space Gaussian with probability-density standard deviation
    /// `sigma`, centred at `x0` and boosted by `exp(i p0 x/ħ)`, normalized
    /// on the grid.
    pub fn gaussian(grid: &SpatialGrid, x0: f64, sigma: f64, p0: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidArgument(format!("gaussian width {sigma}")));
        }
        let hbar = grid.hbar();
        let amplitudes = grid
            .positions()
            .into_iter()
            .map(|x| {
                let d = x - x0;
                Complex64::from_polar((-d * d / (4.0 * sigma * sigma)).exp(), p0 * x / hbar)
            })
            .collect();
        Self::new(*grid, amplitudes, Representation::Position)?.normalized()
    }

    /// Momentum-space Gaussian centred at `p0` with probability-density
    /// standard deviation `sigma_p`, whose position-space centre is `x0`.
    pub fn momentum_gaussian(grid: &SpatialGrid, x0: f64, p0: f64, sigma_p: f64) -> Result<Self> {
        if !(sigma_p.is_finite() && sigma_p > 0.0) {
            return Err(Error::InvalidArgument(format!("gaussian width {sigma_p}")));
        }
        let hbar = grid.hbar();
        let amplitudes = grid
            .momenta()
            .into_iter()
            .map(|p| {
                let d = p - p0;
                Complex64::from_polar((-d * d / (4.0 * sigma_p * sigma_p)).exp(), -p * x0 / hbar)
            })
            .collect();
        Self::new(*grid, amplitudes, Representation::Momentum)?.normalized()
    }

    /// Single momentum eigenmode `bin` (FFT index), unit-normalized.
    pub fn plane_wave(grid: &SpatialGrid, bin: usize) -> Result<Self> {
        if bin >= grid.len() {
            return Err(Error::InvalidArgument(format!("mode index {bin}")));
        }
        let p = grid.momentum(bin);
        let hbar = grid.hbar();
        let amp = 1.0 / grid.length().sqrt();
        let amplitudes = grid
            .positions()
            .into_iter()
            .map(|x| Complex64::from_polar(amp, p * x / hbar))
            .collect();
        Self::new(*grid, amplitudes, Representation::Position)
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub(crate) fn map_amplitudes(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            amplitudes: self
                .amplitudes
                .iter()
                .enumerate()
                .map(|(j, &z)| f(j, z))
                .collect(),
            representation: self.representation,
        }
    }

    pub fn weight(&self) -> f64 {
        self.grid.weight(self.representation)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.weight()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::DegenerateState("zero norm"));
        }
        Ok(self.map_amplitudes(|_, z| z / norm))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map_amplitudes(|_, z| z * factor)
    }

    /// Unitary change to momentum representation; identity if already there.
    pub fn to_momentum(&self) -> Self {
        self.convert(Representation::Momentum)
    }

    /// Unitary change to position representation; identity if already there.
    pub fn to_position(&self) -> Self {
        self.convert(Representation::Position)
    }

    pub fn to_representation(&self, rep: Representation) -> Self {
        self.convert(rep)
    }

    fn convert(&self, target: Representation) -> Self {
        if self.representation == target {
            return self.clone();
        }
        SpectralTransform::new(&self.grid)
            .convert(self, target)
            .expect("transform built on the state's own grid")
    }

    /// Largest boundary amplitude relative to the peak amplitude, in
    /// position representation.
    pub fn edge_ratio(&self) -> f64 {
        let psi = self.to_position();
        let peak = psi.amplitudes.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let first = psi.amplitudes[0].norm();
        let last = psi.amplitudes[psi.amplitudes.len() - 1].norm();
        first.max(last) / peak
    }

    /// `⟨x⟩` from the position-space density (normalized by the norm).
    pub fn mean_position(&self) -> f64 {
        let psi = self.to_position();
        moment(&psi, |j| psi.grid.position(j), 1)
    }

    /// `⟨p⟩` from the momentum-space density (normalized by the norm).
    pub fn mean_momentum(&self) -> f64 {
        let phi = self.to_momentum();
        moment(&phi, |j| phi.grid.momentum(j), 1)
    }

    /// Position-space standard deviation.
    pub fn width(&self) -> f64 {
        let psi = self.to_position();
        let mean = moment(&psi, |j| psi.grid.position(j), 1);
        moment(&psi, |j| psi.grid.position(j) - mean, 2).sqrt()
    }

    /// Momentum-space standard deviation.
    pub fn momentum_width(&self) -> f64 {
        let phi = self.to_momentum();
        let mean = moment(&phi, |j| phi.grid.momentum(j), 1);
        moment(&phi, |j| phi.grid.momentum(j) - mean, 2).sqrt()
    }

    /// Largest componentwise distance after bringing `other` into this
    /// state's representation.
    pub fn max_abs_diff(&self, other: &WaveFunction) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let other = other.to_representation(self.representation);
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Weighted L² distance `‖self − other‖` in this state's representation.
    pub fn distance(&self, other: &WaveFunction) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let other = other.to_representation(self.representation);
        let sum: f64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok((sum * self.weight()).sqrt())
    }
}

fn moment(psi: &WaveFunction, coord: impl Fn(usize) -> f64, power: i32) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (j, z) in psi.amplitudes.iter().enumerate() {
        let w = z.norm_sqr();
        num += w * coord(j).powi(power);
        den += w;
    }
    num / den
}

/// Quadrature-weighted inner product `⟨a|b⟩`, conjugate-linear in `a`.
pub fn inner(a: &WaveFunction, b: &WaveFunction) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    if a.representation != b.representation {
        return Err(Error::RepresentationMismatch {
            expected: a.representation,
            found: b.representation,
        });
    }
    let sum: Complex64 = a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(sum * a.weight())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn grid_spacing_and_momenta() {
        let g = make_grid(8, 0.0, 8.0).unwrap();
        assert_eq!(g.dx(), 1.0);
        let expected: Vec<f64> = [0, 1, 2, 3, -4, -3, -2, -1]
            .iter()
            .map(|&k| 2.0 * PI * k as f64 / 8.0)
            .collect();
        assert_eq!(g.momenta(), expected);

        let shifted = make_grid(8, -4.0, 4.0).unwrap();
        assert_eq!(shifted.dx(), 1.0);
        assert_eq!(shifted.momenta(), expected);

        let sorted = g.momenta_sorted();
        assert!(sorted.windows(2).all(|w| w[0] < w[1]));
        // symmetric set minus the unpaired −n/2 mode
        let sum: f64 = g.momenta().iter().sum();
        assert!(close(sum, -g.p_max(), 1e-12));
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert_eq!(make_grid(7, 0.0, 8.0), Err(Error::GridSize(7)));
        assert_eq!(make_grid(4, 0.0, 8.0), Err(Error::GridSize(4)));
        assert!(matches!(
            make_grid(8, 1.0, 1.0),
            Err(Error::DegenerateInterval { .. })
        ));
        assert!(SpatialGrid::new(8, 0.0, 1.0, PhysicalConstants { hbar: 0.0, c: 1.0 }).is_err());
    }

    #[test]
    fn momentum_grid_scales_with_hbar() {
        let c = PhysicalConstants::new(0.5, 3.0).unwrap();
        let g = SpatialGrid::new(16, 0.0, 4.0, c).unwrap();
        assert!(close(g.momentum(1), 2.0 * PI * 0.5 / 4.0, 1e-15));
    }

    #[test]
    fn gaussian_transforms_to_gaussian() {
        // σ_p = ħ/(2σ) for the density standard deviations
        for &(hbar, sigma) in &[(1.0, 1.0), (1.0, 2.5), (0.3, 0.7)] {
            let consts = PhysicalConstants::new(hbar, 1.0).unwrap();
            let g = SpatialGrid::new(1024, -40.0, 40.0, consts).unwrap();
            let psi = WaveFunction::gaussian(&g, 1.5, sigma, 0.0).unwrap();
            let phi = psi.to_momentum();
            let expected = hbar / (2.0 * sigma);
            assert!(
                (phi.momentum_width() - expected).abs() / expected < 1e-10,
                "{} vs {}",
                phi.momentum_width(),
                expected
            );
            assert!(psi.mean_momentum().abs() < 1e-12);
            // analytic amplitude |φ(p)| = (2πσ_p²)^(−1/4) exp(−p²/(4σ_p²))
            let amp0 = (2.0 * PI * expected * expected).powf(-0.25);
            assert!(close(phi.amplitudes()[0].norm(), amp0, 1e-10));
        }
    }

    #[test]
    fn constant_state_is_zero_momentum_spike() {
        let g = make_grid(64, -3.0, 5.0).unwrap();
        let amp = Complex64::new(1.0 / g.length().sqrt(), 0.0);
        let psi = WaveFunction::new(g, vec![amp; 64], Representation::Position).unwrap();
        let phi = psi.to_momentum();
        let w = phi.amplitudes();
        assert!(close(w[0].norm_sqr() * g.dp(), 1.0, 1e-12));
        assert!(w[1..].iter().all(|z| z.norm() < 1e-13));
    }

    #[test]
    fn plane_wave_lands_on_its_bin() {
        let g = make_grid(32, -2.0, 6.0).unwrap();
        for bin in [0, 3, 16, 29] {
            let phi = WaveFunction::plane_wave(&g, bin).unwrap().to_momentum();
            for (j, z) in phi.amplitudes().iter().enumerate() {
                if j == bin {
                    assert!(close(z.norm_sqr() * g.dp(), 1.0, 1e-12));
                } else {
                    assert!(z.norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn same_representation_is_identity() {
        let g = make_grid(16, 0.0, 1.0).unwrap();
        let psi = WaveFunction::gaussian(&g, 0.5, 0.1, 0.0).unwrap();
        assert_eq!(psi.to_position(), psi);
    }

    #[test]
    fn inner_product_errors() {
        let g = make_grid(16, 0.0, 1.0).unwrap();
        let h = make_grid(16, 0.0, 2.0).unwrap();
        let a = WaveFunction::gaussian(&g, 0.5, 0.1, 0.0).unwrap();
        let b = WaveFunction::gaussian(&h, 0.5, 0.1, 0.0).unwrap();
        assert_eq!(inner(&a, &b), Err(Error::GridMismatch));
        assert!(matches!(
            inner(&a, &a.to_momentum()),
            Err(Error::RepresentationMismatch { .. })
        ));
        assert!(close(inner(&a, &a).unwrap().re, 1.0, 1e-12));
    }

    #[test]
    fn rejects_non_finite_and_wrong_length() {
        let g = make_grid(8, 0.0, 1.0).unwrap();
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        v[3] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(
            WaveFunction::new(g, v, Representation::Position),
            Err(Error::NonFinite(3))
        );
        assert!(matches!(
            WaveFunction::new(g, vec![], Representation::Position),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
