use thiserror::Error;

/// Errors produced by the catdecay library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate cat-state norm: 1 + cos(phi)·exp(-2|alpha|^2) = {denominator:e}")]
    DegenerateNorm { denominator: f64 },

    #[error("odd coherent state needs |alpha| > 1e-4, got {alpha_abs:e}")]
    OddCatTooSmall { alpha_abs: f64 },

    #[error("Laguerre L_{m}^{k} undefined here: negative upper index needs m >= |k|")]
    LaguerreDomain { m: u32, k: i64 },

    #[error("phase index {0} out of range (expected 1 or 2)")]
    PhaseIndex(usize),

    #[error("decay time must be finite and non-negative, got {0}")]
    InvalidTau(f64),

    #[error("integration step {step} exceeds the 0.01 accuracy guard")]
    StepTooLarge { step: f64 },

    #[error("step count must be at least 1")]
    ZeroSteps,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("probability P({n}) = {value:e} is negative beyond rounding")]
    NegativeProbability { n: usize, value: f64 },

    #[error("Wigner series not converged at cutoff {cutoff}: successive sums differ by {delta:e}")]
    SeriesNotConverged { cutoff: usize, delta: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("malformed density-matrix document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
