//! Exact spectral time steps for free particles.
//!
//! Every Hamiltonian here is diagonal (or 2×2 block diagonal) in momentum,
//! so one step is a pointwise multiplication by `exp(−i H(p) dt/ħ)` and the
//! only error is roundoff. The relativistic scalar propagator is the
//! positive-energy square root `√(m²c⁴ + p²c²)`; the Dirac propagator uses
//! `H(p) = c p σ₁ + m c² σ₃`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Representation, SpatialGrid, SpectralTransform, WaveFunction};
use crate::operators::ParticleSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagatorKind {
    Schrodinger,
    RelativisticSqrt,
    Dirac1D,
    /// Rest-energy phase `exp(−i E_s dt_s/ħ)` per proper-time step.
    ProperTimePhase,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorSpec {
    kind: PropagatorKind,
    particle: ParticleSpec,
    dt: f64,
}

impl PropagatorSpec {
    pub fn new(kind: PropagatorKind, particle: ParticleSpec, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidTimeStep(dt));
        }
        if kind == PropagatorKind::Schrodinger && particle.is_massless() {
            return Err(Error::MasslessNonRelativistic);
        }
        Ok(Self { kind, particle, dt })
    }

    pub fn kind(&self) -> PropagatorKind {
        self.kind
    }

    pub fn particle(&self) -> &ParticleSpec {
        &self.particle
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn with_dt(&self, dt: f64) -> Result<Self> {
        Self::new(self.kind, self.particle, dt)
    }

    /// Scalar energy at momentum `p` for the scalar kinds.
    fn energy(&self, p: f64) -> Result<f64> {
        match self.kind {
            PropagatorKind::Schrodinger => Ok(self.particle.kinetic_energy(p)),
            PropagatorKind::RelativisticSqrt => Ok(self.particle.total_energy(p)),
            PropagatorKind::ProperTimePhase => Ok(self.particle.rest_energy()),
            PropagatorKind::Dirac1D => Err(Error::InvalidArgument(
                "Dirac propagation acts on spinors".into(),
            )),
        }
    }
}

/// Reusable step for scalar wavefunctions on one grid. Holds the planned
/// transform and the unimodular multiplier.
#[derive(Debug, Clone)]
pub struct ScalarPropagator {
    spec: PropagatorSpec,
    transform: SpectralTransform,
    multiplier: Vec<Complex64>,
}

impl ScalarPropagator {
    pub fn new(grid: &SpatialGrid, spec: PropagatorSpec) -> Result<Self> {
        let hbar = grid.hbar();
        let multiplier = grid
            .momenta()
            .into_iter()
            .map(|p| spec.energy(p).map(|e| Complex64::cis(-e * spec.dt / hbar)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spec,
            transform: SpectralTransform::new(grid),
            multiplier,
        })
    }

    pub fn spec(&self) -> &PropagatorSpec {
        &self.spec
    }

    pub fn multiplier(&self) -> &[Complex64] {
        &self.multiplier
    }

    /// Advances `steps` steps; the result is in the input's representation.
    pub fn evolve(&self, psi: &WaveFunction, steps: usize) -> Result<WaveFunction> {
        if psi.grid() != self.transform.grid() {
            return Err(Error::GridMismatch);
        }
        let rep = psi.representation();
        let phi = self.transform.convert(psi, Representation::Momentum)?;
        let mut amps = phi.into_amplitudes();
        for _ in 0..steps {
            for (z, u) in amps.iter_mut().zip(&self.multiplier) {
                *z *= u;
            }
        }
        let out = WaveFunction::new(*self.transform.grid(), amps, Representation::Momentum)?;
        self.transform.convert(&out, rep)
    }

    pub fn step(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        self.evolve(psi, 1)
    }
}

fn scalar_step(
    psi: &WaveFunction,
    spec: &PropagatorSpec,
    kind: PropagatorKind,
) -> Result<WaveFunction> {
    if spec.kind != kind {
        return Err(Error::InvalidArgument(format!(
            "propagator spec is {:?}, expected {kind:?}",
            spec.kind
        )));
    }
    ScalarPropagator::new(psi.grid(), *spec)?.step(psi)
}

/// One step of `iħ∂ψ/∂t = (p̂²/2m) ψ`.
pub fn step_schrodinger(psi: &WaveFunction, spec: &PropagatorSpec) -> Result<WaveFunction> {
    scalar_step(psi, spec, PropagatorKind::Schrodinger)
}

/// One step of `iħ∂ψ/∂t = √(m²c⁴ + p̂²c²) ψ`.
pub fn step_relativistic(psi: &WaveFunction, spec: &PropagatorSpec) -> Result<WaveFunction> {
    scalar_step(psi, spec, PropagatorKind::RelativisticSqrt)
}

/// `c_k ← c_k·exp(−i E_k dt_s/ħ)`: exact proper-time evolution in the
/// rest-energy eigenbasis.
pub fn step_proper_time_phase(
    coefficients: &[Complex64],
    energies: &[f64],
    dt_s: f64,
    hbar: f64,
) -> Result<Vec<Complex64>> {
    if coefficients.len() != energies.len() {
        return Err(Error::LengthMismatch {
            expected: energies.len(),
            found: coefficients.len(),
        });
    }
    if energies.iter().any(|e| !e.is_finite()) || !dt_s.is_finite() {
        return Err(Error::InvalidArgument("non-finite energy or step".into()));
    }
    Ok(coefficients
        .iter()
        .zip(energies)
        .map(|(c, e)| c * Complex64::cis(-e * dt_s / hbar))
        .collect())
}

pub type Matrix2 = [[Complex64; 2]; 2];

/// `H(p) = c p σ₁ + m c² σ₃`
pub fn dirac_hamiltonian(particle: &ParticleSpec, p: f64) -> Matrix2 {
    let mc2 = Complex64::new(particle.rest_energy(), 0.0);
    let cp = Complex64::new(particle.constants().c * p, 0.0);
    [[mc2, cp], [cp, -mc2]]
}

/// `exp(−i H(p) dt/ħ) = cos(Eτ) I − i sin(Eτ) H/E` with `τ = dt/ħ`, using
/// `H² = E² I`.
pub fn dirac_step_matrix(particle: &ParticleSpec, p: f64, dt: f64) -> Matrix2 {
    let energy = particle.total_energy(p);
    let theta = energy * dt / particle.constants().hbar;
    let cos = Complex64::new(theta.cos(), 0.0);
    if energy == 0.0 {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        return [[one, zero], [zero, one]];
    }
    let s = Complex64::new(0.0, -theta.sin() / energy);
    let h = dirac_hamiltonian(particle, p);
    [
        [cos + s * h[0][0], s * h[0][1]],
        [s * h[1][0], cos + s * h[1][1]],
    ]
}

/// Two-component wavefunction for the 1+1D Dirac limit.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorWaveFunction {
    upper: WaveFunction,
    lower: WaveFunction,
}

impl SpinorWaveFunction {
    pub fn new(upper: WaveFunction, lower: WaveFunction) -> Result<Self> {
        if upper.grid() != lower.grid() {
            return Err(Error::GridMismatch);
        }
        let lower = lower.to_representation(upper.representation());
        Ok(Self { upper, lower })
    }

    /// Positive-energy spinor field built from a scalar momentum amplitude:
    /// each node carries the `+E(p)` eigenvector of `H(p)`.
    pub fn positive_energy(psi: &WaveFunction, particle: &ParticleSpec) -> Result<Self> {
        let phi = psi.to_momentum();
        let grid = *phi.grid();
        let mut up = Vec::with_capacity(grid.len());
        let mut lo = Vec::with_capacity(grid.len());
        for (j, amp) in phi.amplitudes().iter().enumerate() {
            let (a, b) = positive_energy_spinor(particle, grid.momentum(j));
            up.push(amp * a);
            lo.push(amp * b);
        }
        Self::new(
            WaveFunction::new(grid, up, Representation::Momentum)?,
            WaveFunction::new(grid, lo, Representation::Momentum)?,
        )
    }

    pub fn upper(&self) -> &WaveFunction {
        &self.upper
    }

    pub fn lower(&self) -> &WaveFunction {
        &self.lower
    }

    pub fn grid(&self) -> &SpatialGrid {
        self.upper.grid()
    }

    pub fn representation(&self) -> Representation {
        self.upper.representation()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.upper.norm_sqr() + self.lower.norm_sqr()
    }

    pub fn to_representation(&self, rep: Representation) -> Self {
        Self {
            upper: self.upper.to_representation(rep),
            lower: self.lower.to_representation(rep),
        }
    }

    pub fn to_momentum(&self) -> Self {
        self.to_representation(Representation::Momentum)
    }

    pub fn to_position(&self) -> Self {
        self.to_representation(Representation::Position)
    }

    pub fn distance(&self, other: &SpinorWaveFunction) -> Result<f64> {
        let u = self.upper.distance(&other.upper)?;
        let l = self.lower.distance(&other.lower)?;
        Ok(u.hypot(l))
    }
}

/// Normalized `+E(p)` eigenvector of `H(p)`.
pub fn positive_energy_spinor(particle: &ParticleSpec, p: f64) -> (Complex64, Complex64) {
    let mc2 = particle.rest_energy();
    let cp = particle.constants().c * p;
    let e = particle.total_energy(p);
    // (E + mc², cp) vanishes only for a massless particle at p = 0
    let (a, b) = if e + mc2 > 0.0 {
        (e + mc2, cp)
    } else {
        (1.0, 1.0)
    };
    let n = a.hypot(b);
    (Complex64::new(a / n, 0.0), Complex64::new(b / n, 0.0))
}

#[derive(Debug, Clone)]
pub struct DiracPropagator {
    spec: PropagatorSpec,
    transform: SpectralTransform,
    blocks: Vec<Matrix2>,
}

impl DiracPropagator {
    pub fn new(grid: &SpatialGrid, spec: PropagatorSpec) -> Result<Self> {
        if spec.kind != PropagatorKind::Dirac1D {
            return Err(Error::InvalidArgument(format!(
                "propagator spec is {:?}, expected Dirac1D",
                spec.kind
            )));
        }
        let blocks = grid
            .momenta()
            .into_iter()
            .map(|p| dirac_step_matrix(&spec.particle, p, spec.dt))
            .collect();
        Ok(Self {
            spec,
            transform: SpectralTransform::new(grid),
            blocks,
        })
    }

    pub fn spec(&self) -> &PropagatorSpec {
        &self.spec
    }

    pub fn blocks(&self) -> &[Matrix2] {
        &self.blocks
    }

    pub fn evolve(&self, psi: &SpinorWaveFunction, steps: usize) -> Result<SpinorWaveFunction> {
        if psi.grid() != self.transform.grid() {
            return Err(Error::GridMismatch);
        }
        let rep = psi.representation();
        let mut up = self
            .transform
            .convert(&psi.upper, Representation::Momentum)?
            .into_amplitudes();
        let mut lo = self
            .transform
            .convert(&psi.lower, Representation::Momentum)?
            .into_amplitudes();
        for _ in 0..steps {
            for ((u, l), m) in up.iter_mut().zip(lo.iter_mut()).zip(&self.blocks) {
                let (a, b) = (*u, *l);
                *u = m[0][0] * a + m[0][1] * b;
                *l = m[1][0] * a + m[1][1] * b;
            }
        }
        let grid = *self.transform.grid();
        let upper = WaveFunction::new(grid, up, Representation::Momentum)?;
        let lower = WaveFunction::new(grid, lo, Representation::Momentum)?;
        Ok(SpinorWaveFunction {
            upper: self.transform.convert(&upper, rep)?,
            lower: self.transform.convert(&lower, rep)?,
        })
    }

    pub fn step(&self, psi: &SpinorWaveFunction) -> Result<SpinorWaveFunction> {
        self.evolve(psi, 1)
    }
}

/// One step of `iħ∂Ψ/∂t = (c p̂ σ₁ + m c² σ₃) Ψ`.
pub fn step_dirac(psi: &SpinorWaveFunction, spec: &PropagatorSpec) -> Result<SpinorWaveFunction> {
    DiracPropagator::new(psi.grid(), *spec)?.step(psi)
}

/// Analytic density width of a free Gaussian after time `t`:
/// `σ(t)² = σ₀²(1 + (ħt/(2mσ₀²))²)`.
pub fn gaussian_width(sigma0: f64, mass: f64, hbar: f64, t: f64) -> f64 {
    let s = hbar * t / (2.0 * mass * sigma0 * sigma0);
    sigma0 * (1.0 + s * s).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, PhysicalConstants};

    fn natural(m: f64) -> ParticleSpec {
        ParticleSpec::natural(m).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            PropagatorSpec::new(PropagatorKind::Schrodinger, natural(0.0), 0.1),
            Err(Error::MasslessNonRelativistic)
        );
        assert_eq!(
            PropagatorSpec::new(PropagatorKind::RelativisticSqrt, natural(1.0), 0.0),
            Err(Error::InvalidTimeStep(0.0))
        );
        assert!(PropagatorSpec::new(PropagatorKind::RelativisticSqrt, natural(0.0), 0.1).is_ok());
    }

    #[test]
    fn multipliers_are_unimodular() {
        let g = make_grid(128, -10.0, 10.0).unwrap();
        for kind in [
            PropagatorKind::Schrodinger,
            PropagatorKind::RelativisticSqrt,
            PropagatorKind::ProperTimePhase,
        ] {
            let spec = PropagatorSpec::new(kind, natural(1.5), 0.37).unwrap();
            let prop = ScalarPropagator::new(&g, spec).unwrap();
            assert!(prop
                .multiplier()
                .iter()
                .all(|z| (z.norm() - 1.0).abs() < 1e-15));
        }
    }

    #[test]
    fn zero_momentum_mode_is_stationary_under_schrodinger() {
        let g = make_grid(64, -5.0, 5.0).unwrap();
        let psi = WaveFunction::plane_wave(&g, 0).unwrap();
        let spec = PropagatorSpec::new(PropagatorKind::Schrodinger, natural(1.0), 0.5).unwrap();
        let out = step_schrodinger(&psi, &spec).unwrap();
        assert!(out.max_abs_diff(&psi).unwrap() < 1e-15);
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let g = make_grid(64, -5.0, 5.0).unwrap();
        let psi = WaveFunction::gaussian(&g, 0.0, 1.0, 0.0).unwrap();
        let spec =
            PropagatorSpec::new(PropagatorKind::RelativisticSqrt, natural(1.0), 0.5).unwrap();
        assert!(step_schrodinger(&psi, &spec).is_err());
        let dirac = PropagatorSpec::new(PropagatorKind::Dirac1D, natural(1.0), 0.5).unwrap();
        assert!(ScalarPropagator::new(&g, dirac).is_err());
    }

    #[test]
    fn step_preserves_representation() {
        let g = make_grid(64, -5.0, 5.0).unwrap();
        let psi = WaveFunction::gaussian(&g, 0.0, 1.0, 0.0).unwrap();
        let spec =
            PropagatorSpec::new(PropagatorKind::RelativisticSqrt, natural(1.0), 0.5).unwrap();
        assert_eq!(
            step_relativistic(&psi, &spec).unwrap().representation(),
            Representation::Position
        );
        let phi = psi.to_momentum();
        assert_eq!(
            step_relativistic(&phi, &spec).unwrap().representation(),
            Representation::Momentum
        );
    }

    #[test]
    fn proper_time_phase_examples() {
        let c = vec![Complex64::new(0.3, 0.4), Complex64::new(-1.0, 0.2)];
        let e = 2.5;
        let period = 2.0 * std::f64::consts::PI / e;
        let out = step_proper_time_phase(&c[..1], &[e], period, 1.0).unwrap();
        assert!((out[0] - c[0]).norm() < 1e-15);
        assert_eq!(
            step_proper_time_phase(&c[..1], &[0.0], 0.7, 1.0).unwrap()[0],
            c[0]
        );

        let energies = [0.4, 1.9];
        let half = step_proper_time_phase(&c, &energies, 0.35, 1.0).unwrap();
        let two = step_proper_time_phase(&half, &energies, 0.35, 1.0).unwrap();
        let one = step_proper_time_phase(&c, &energies, 0.7, 1.0).unwrap();
        for (a, b) in two.iter().zip(&one) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(step_proper_time_phase(&c, &[1.0], 0.1, 1.0).is_err());
    }

    #[test]
    fn dirac_hamiltonian_squares_to_energy() {
        let consts = PhysicalConstants::new(1.0, 1.7).unwrap();
        let particle = ParticleSpec::new(0.6, consts).unwrap();
        for i in 0..50 {
            let p = -5.0 + 0.2 * i as f64 + 0.013;
            let h = dirac_hamiltonian(&particle, p);
            let e2 = particle.total_energy(p).powi(2);
            let sq = [
                [
                    h[0][0] * h[0][0] + h[0][1] * h[1][0],
                    h[0][0] * h[0][1] + h[0][1] * h[1][1],
                ],
                [
                    h[1][0] * h[0][0] + h[1][1] * h[1][0],
                    h[1][0] * h[0][1] + h[1][1] * h[1][1],
                ],
            ];
            assert!((sq[0][0].re - e2).abs() < 1e-12 * e2);
            assert!((sq[1][1].re - e2).abs() < 1e-12 * e2);
            assert!(sq[0][1].norm() < 1e-12 * e2 && sq[1][0].norm() < 1e-12 * e2);
        }
    }

    #[test]
    fn dirac_step_matrix_is_unitary() {
        let particle = natural(1.0);
        for p in [-3.0, 0.0, 0.5, 10.0] {
            let m = dirac_step_matrix(&particle, p, 0.3);
            // columns orthonormal
            let c0 = m[0][0].norm_sqr() + m[1][0].norm_sqr();
            let c1 = m[0][1].norm_sqr() + m[1][1].norm_sqr();
            let cross = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
            assert!((c0 - 1.0).abs() < 1e-14 && (c1 - 1.0).abs() < 1e-14);
            assert!(cross.norm() < 1e-14);
        }
        let photon = natural(0.0);
        let id = dirac_step_matrix(&photon, 0.0, 1.0);
        assert_eq!(id[0][0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn positive_energy_spinor_is_eigenvector() {
        for (m, p) in [(1.0, 0.0), (1.0, -2.0), (0.0, 3.0), (0.0, -3.0), (2.0, 0.1)] {
            let particle = natural(m);
            let (a, b) = positive_energy_spinor(&particle, p);
            let h = dirac_hamiltonian(&particle, p);
            let e = particle.total_energy(p);
            let ha = h[0][0] * a + h[0][1] * b;
            let hb = h[1][0] * a + h[1][1] * b;
            assert!(
                (ha - e * a).norm() < 1e-14 && (hb - e * b).norm() < 1e-14,
                "m={m} p={p}"
            );
            assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn massless_dirac_components_translate_at_light_speed() {
        let g = make_grid(1024, -40.0, 40.0).unwrap();
        let f = WaveFunction::gaussian(&g, -5.0, 1.0, 0.0).unwrap();
        let h = WaveFunction::gaussian(&g, 5.0, 1.5, 0.0).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // right mover in σ₁ = +1, left mover in σ₁ = −1
        let upper = WaveFunction::new(
            g,
            f.amplitudes()
                .iter()
                .zip(h.amplitudes())
                .map(|(a, b)| (a + b) * s)
                .collect(),
            Representation::Position,
        )
        .unwrap();
        let lower = WaveFunction::new(
            g,
            f.amplitudes()
                .iter()
                .zip(h.amplitudes())
                .map(|(a, b)| (a - b) * s)
                .collect(),
            Representation::Position,
        )
        .unwrap();
        let spinor = SpinorWaveFunction::new(upper, lower).unwrap();
        let spec = PropagatorSpec::new(PropagatorKind::Dirac1D, natural(0.0), 0.01).unwrap();
        let out = DiracPropagator::new(&g, spec)
            .unwrap()
            .evolve(&spinor, 1000)
            .unwrap()
            .to_position();
        let right = WaveFunction::new(
            g,
            out.upper()
                .amplitudes()
                .iter()
                .zip(out.lower().amplitudes())
                .map(|(a, b)| (a + b) * s)
                .collect(),
            Representation::Position,
        )
        .unwrap();
        let left = WaveFunction::new(
            g,
            out.upper()
                .amplitudes()
                .iter()
                .zip(out.lower().amplitudes())
                .map(|(a, b)| (a - b) * s)
                .collect(),
            Representation::Position,
        )
        .unwrap();
        assert!((right.mean_position() - 5.0).abs() < 1e-8);
        assert!((left.mean_position() + 5.0).abs() < 1e-8);
        assert!((right.width() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn gaussian_width_law() {
        assert_eq!(gaussian_width(2.0, 1.0, 1.0, 0.0), 2.0);
        // ħt/(2mσ₀²) = 1 ⇒ σ = √2 σ₀
        assert!((gaussian_width(1.0, 1.0, 1.0, 2.0) - 2f64.sqrt()).abs() < 1e-15);
    }
}
