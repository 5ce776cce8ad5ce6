use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid point count {0} must be a power of two and at least 8")]
    GridSize(usize),

    #[error("degenerate interval [{x_min}, {x_max}]")]
    DegenerateInterval { x_min: f64, x_max: f64 },

    #[error("physical constant {name} must be positive and finite, got {value}")]
    BadConstant { name: &'static str, value: f64 },

    #[error("wavefunctions live on different grids")]
    GridMismatch,

    #[error("expected {expected:?} representation, got {found:?}")]
    RepresentationMismatch {
        expected: crate::grid::Representation,
        found: crate::grid::Representation,
    },

    #[error("amplitude count {found} does not match grid size {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),

    #[error("state is not edge-decayed: boundary amplitude ratio {ratio:e} exceeds {limit:e}")]
    NotEdgeDecayed { ratio: f64, limit: f64 },

    #[error("invalid mass {0}")]
    InvalidMass(f64),

    #[error("non-relativistic dispersion requires a massive particle")]
    MasslessNonRelativistic,

    #[error("time step must be positive and finite, got {0}")]
    InvalidTimeStep(f64),

    #[error("degenerate state: {0}")]
    DegenerateState(&'static str),

    #[error("not enough nodes: need at least {needed}, got {found}")]
    TooFewNodes { needed: usize, found: usize },

    #[error("zero entry in kernel matrix at ({row}, {col})")]
    ZeroEntry { row: usize, col: usize },

    #[error("finite-difference estimate did not converge (last change {change:e})")]
    NoConvergence { change: f64 },

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    #[error("speed {speed} reaches or exceeds c = {c} at t = {t}")]
    Superluminal { t: f64, speed: f64, c: f64 },

    #[error("time {t} outside [0, {horizon}]")]
    OutOfRange { t: f64, horizon: f64 },

    #[error("invalid panel count {panels} for {rule}")]
    InvalidPanels { panels: usize, rule: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
