//! Proper-time formulation of free relativistic quantum evolution on a
//! periodic spectral grid.
//!
//! * [`grid`]: grids, wavefunctions, the unitary position/momentum transform
//! * [`operators`]: momentum, energy, velocity-squared and proper-time operators
//! * [`canonical`]: transformation-kernel functional equations and checks
//! * [`propagators`]: exact spectral steps for the free dynamical limits
//! * [`frames`]: proper time and semiclassical phases along accelerating trajectories
//! * [`scenario`]: scenario files, runs and reports behind the CLI

pub mod canonical;
pub mod error;
pub mod frames;
pub mod grid;
pub mod operators;
pub mod propagators;
pub mod scenario;

pub use error::{Error, Result};
pub use grid::{inner, make_grid, PhysicalConstants, Representation, SpatialGrid, WaveFunction};
pub use operators::{DiagonalOperator, Dispersion, ParticleSpec};
