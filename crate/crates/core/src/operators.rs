//! Free-particle operators as diagonal multipliers.
//!
//! Every operator here is a function of `p̂` alone, so it is realized as a
//! pointwise multiplier in the momentum basis. The position operator is the
//! one exception and is diagonal in the position basis.
//!
//! The self-adjoint velocity-squared operator is the symmetrized product
//! `v̂²/c² = ½[p̂²c²(p̂²c²+Ê_s²)⁻¹ + (p̂²c²+Ê_s²)⁻¹p̂²c²]`. With a scalar rest
//! energy both terms commute and it collapses to `p²c²/(p²c²+E_s²)` per
//! momentum node, which is what [`velocity_squared_op`] evaluates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{PhysicalConstants, Representation, SpatialGrid, WaveFunction};

const FLAG_TOL: f64 = 1e-14;

/// Edge-decay threshold for the commutator check.
pub const EDGE_DECAY_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleSpec {
    mass: f64,
    rest_energy: f64,
    constants: PhysicalConstants,
}

impl ParticleSpec {
    /// `mass = 0` is allowed (photon).
    pub fn new(mass: f64, constants: PhysicalConstants) -> Result<Self> {
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        let constants = PhysicalConstants::new(constants.hbar, constants.c)?;
        Ok(Self {
            mass,
            rest_energy: mass * constants.c * constants.c,
            constants,
        })
    }

    pub fn natural(mass: f64) -> Result<Self> {
        Self::new(mass, PhysicalConstants::NATURAL)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn rest_energy(&self) -> f64 {
        self.rest_energy
    }

    pub fn constants(&self) -> PhysicalConstants {
        self.constants
    }

    pub fn is_massless(&self) -> bool {
        self.mass == 0.0
    }

    /// `√(E_s² + p²c²)`
    pub fn total_energy(&self, p: f64) -> f64 {
        let pc = p * self.constants.c;
        self.rest_energy.hypot(pc)
    }

    /// `p²/2m`; infinite for a massless particle.
    pub fn kinetic_energy(&self, p: f64) -> f64 {
        p * p / (2.0 * self.mass)
    }

    /// `v²(p) = p²c⁴/(p²c² + E_s²)`; exactly `c²` for a massless particle
    /// with nonzero momentum.
    pub fn velocity_squared(&self, p: f64) -> f64 {
        let c = self.constants.c;
        let pc2 = (p * c) * (p * c);
        let denom = pc2 + self.rest_energy * self.rest_energy;
        if denom == 0.0 {
            // massless at p = 0: the limit along any ray is c²
            return c * c;
        }
        pc2 * c * c / denom
    }

    /// `1 − v²/c² = E_s²/(p²c² + E_s²)`, evaluated without cancellation.
    pub fn lorentz_factor_sq_inv(&self, p: f64) -> f64 {
        let pc = p * self.constants.c;
        let es2 = self.rest_energy * self.rest_energy;
        let denom = pc * pc + es2;
        if denom == 0.0 {
            return 0.0;
        }
        es2 / denom
    }

    /// `√(1 − v²/c²) = E_s / E(p)`, clamped to `[0, 1]` before the root.
    pub fn time_dilation(&self, p: f64) -> f64 {
        self.lorentz_factor_sq_inv(p).clamp(0.0, 1.0).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dispersion {
    NonRelativistic,
    Relativistic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperator {
    basis: Representation,
    values: Vec<Complex64>,
    hermitian: bool,
    unitary: bool,
}

impl DiagonalOperator {
    pub fn new(basis: Representation, values: Vec<Complex64>) -> Self {
        let hermitian = values.iter().all(|z| z.im.abs() <= FLAG_TOL);
        let unitary = values.iter().all(|z| (z.norm() - 1.0).abs() <= FLAG_TOL);
        Self {
            basis,
            values,
            hermitian,
            unitary,
        }
    }

    pub fn from_real(basis: Representation, values: impl IntoIterator<Item = f64>) -> Self {
        Self::new(
            basis,
            values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn identity(basis: Representation, n: usize) -> Self {
        Self::new(basis, vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn basis(&self) -> Representation {
        self.basis
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    /// `exp(−i·A·τ)` for a Hermitian `A`; unimodular at every node.
    pub fn exponentiate(&self, tau: f64) -> Self {
        Self::new(
            self.basis,
            self.values
                .iter()
                .map(|z| Complex64::cis(-z.re * tau))
                .collect(),
        )
    }

    pub fn compose(&self, other: &DiagonalOperator) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::RepresentationMismatch {
                expected: self.basis,
                found: other.basis,
            });
        }
        if self.values.len() != other.values.len() {
            return Err(Error::LengthMismatch {
                expected: self.values.len(),
                found: other.values.len(),
            });
        }
        Ok(Self::new(
            self.basis,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        ))
    }
}

pub fn momentum_op(grid: &SpatialGrid) -> DiagonalOperator {
    DiagonalOperator::from_real(Representation::Momentum, grid.momenta())
}

/// Multiplication by the grid coordinate, diagonal in position space. Not
/// periodic: it jumps by `−L` across the wrap point.
pub fn position_op(grid: &SpatialGrid) -> DiagonalOperator {
    DiagonalOperator::from_real(Representation::Position, grid.positions())
}

pub fn total_energy_op(
    grid: &SpatialGrid,
    particle: &ParticleSpec,
    dispersion: Dispersion,
) -> Result<DiagonalOperator> {
    let momenta = grid.momenta();
    let values: Vec<f64> = match dispersion {
        Dispersion::NonRelativistic => {
            if particle.is_massless() {
                return Err(Error::MasslessNonRelativistic);
            }
            momenta
                .iter()
                .map(|&p| particle.kinetic_energy(p))
                .collect()
        }
        Dispersion::Relativistic => momenta.iter().map(|&p| particle.total_energy(p)).collect(),
    };
    Ok(DiagonalOperator::from_real(
        Representation::Momentum,
        values,
    ))
}

pub fn rest_energy_op(grid: &SpatialGrid, particle: &ParticleSpec) -> DiagonalOperator {
    DiagonalOperator::from_real(
        Representation::Momentum,
        std::iter::repeat_n(particle.rest_energy(), grid.len()),
    )
}

pub fn velocity_squared_op(grid: &SpatialGrid, particle: &ParticleSpec) -> DiagonalOperator {
    DiagonalOperator::from_real(
        Representation::Momentum,
        grid.momenta()
            .into_iter()
            .map(|p| particle.velocity_squared(p)),
    )
}

/// Bounded proper-time operator `t̂_s = t(1 − v̂²/c²)^½` at reference time `t`.
///
/// Eigenvalues lie in `[0, t]` for `t > 0` and in `[t, 0]` for `t < 0`.
pub fn proper_time_op(grid: &SpatialGrid, particle: &ParticleSpec, t: f64) -> DiagonalOperator {
    DiagonalOperator::from_real(
        Representation::Momentum,
        grid.momenta()
            .into_iter()
            .map(|p| t * particle.time_dilation(p)),
    )
}

pub fn apply(op: &DiagonalOperator, psi: &WaveFunction) -> Result<WaveFunction> {
    if op.basis != psi.representation() {
        return Err(Error::RepresentationMismatch {
            expected: op.basis,
            found: psi.representation(),
        });
    }
    if op.values.len() != psi.amplitudes().len() {
        return Err(Error::LengthMismatch {
            expected: op.values.len(),
            found: psi.amplitudes().len(),
        });
    }
    Ok(psi.map_amplitudes(|j, z| op.values[j] * z))
}

/// Applies `op` after moving `psi` into the operator's basis; the result
/// stays in that basis.
pub fn apply_any(op: &DiagonalOperator, psi: &WaveFunction) -> Result<WaveFunction> {
    apply(op, &psi.to_representation(op.basis))
}

/// `⟨ψ|A|ψ⟩ / ⟨ψ|ψ⟩`
pub fn expectation(op: &DiagonalOperator, psi: &WaveFunction) -> Result<Complex64> {
    let psi = psi.to_representation(op.basis);
    let a_psi = apply(op, &psi)?;
    let num = crate::grid::inner(&psi, &a_psi)?;
    let den = psi.norm_sqr();
    if den == 0.0 {
        return Err(Error::DegenerateState("zero norm"));
    }
    Ok(num / den)
}

/// `⟨ψ|[x̂,p̂]|ψ⟩ / ⟨ψ|ψ⟩` with `x̂` diagonal in position space and `p̂`
/// diagonal in momentum space.
///
/// The coordinate multiplier is discontinuous at the periodic wrap point, so
/// the state must be edge-decayed: boundary amplitude at most
/// [`EDGE_DECAY_LIMIT`] times the peak.
pub fn commutator_xp_expectation(psi: &WaveFunction) -> Result<Complex64> {
    let ratio = psi.edge_ratio();
    if ratio > EDGE_DECAY_LIMIT {
        return Err(Error::NotEdgeDecayed {
            ratio,
            limit: EDGE_DECAY_LIMIT,
        });
    }
    let grid = psi.grid();
    let x = position_op(grid);
    let p = momentum_op(grid);
    let psi = psi.to_position();

    let p_psi = apply(&p, &psi.to_momentum())?.to_position();
    let xp_psi = apply(&x, &p_psi)?;

    let x_psi = apply(&x, &psi)?;
    let px_psi = apply(&p, &x_psi.to_momentum())?.to_position();

    let den = psi.norm_sqr();
    if den == 0.0 {
        return Err(Error::DegenerateState("zero norm"));
    }
    let lhs = crate::grid::inner(&psi, &xp_psi)?;
    let rhs = crate::grid::inner(&psi, &px_psi)?;
    Ok((lhs - rhs) / den)
}

/// Sum of squared energies of two equal-mass particles,
/// `c²(2m²c² + p_a² + p_b²)`. Invariant under the rotation
/// `P₁,₂ = (p_a ± p_b)/√2`.
pub fn squared_energy_sum(particle: &ParticleSpec, p_a: f64, p_b: f64) -> f64 {
    let c = particle.constants().c;
    let m = particle.mass();
    c * c * (2.0 * m * m * c * c + p_a * p_a + p_b * p_b)
}
