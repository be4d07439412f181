//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("superoperator dimension {dim} exceeds dense limit {limit}")]
    DenseLimit { dim: usize, limit: usize },

    #[error("Hamiltonian is not Hermitian (deviation {deviation:.3e} relative to norm)")]
    NonHermitian { deviation: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("no steady state found within tolerance {0:.3e}")]
    NoSteadyState(f64),

    #[error("step size underflow at t = {0}")]
    StepUnderflow(f64),

    #[error("conserved quantity `{name}` drifted by {drift:.3e}")]
    ConservationDrift { name: String, drift: f64 },

    #[error("coordinate chart pole: |{coord}| = {value:.3e} is too small to eliminate")]
    ChartPole { coord: &'static str, value: f64 },

    #[error("polar coordinate singularity: amplitude {0:.3e} below guard")]
    PolarSingularity(f64),

    #[error("no fixed points found; cannot classify phase")]
    NoFixedPoints,

    #[error("no PT-broken fixed points at these parameters")]
    NoPtBrokenPoints,

    #[error("closed-form fixed point failed residual check: {0:.3e}")]
    ClosedFormResidual(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
