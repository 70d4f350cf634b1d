use num_complex::Complex64;
use thiserror::Error;

/// Failures reported by the library. Every variant is a recoverable value; nothing panics on bad input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("N exceeds supported maximum: N = {n} > {max}")]
    ModelTooLarge { n: usize, max: usize },

    #[error("N must be at least 1")]
    ModelTooSmall,

    #[error("index {index} outside 0..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("p = {0} lies outside the open interval (0, 1)")]
    ProbabilityOutOfRange(f64),

    #[error("{0} has a 1/xi factor and is undefined at xi = 0")]
    SingularPoint(&'static str),

    #[error("degenerate vector with squared norm {0:e}")]
    DegenerateVector(f64),

    #[error("chain annihilated: trace {trace:e} below threshold {threshold:e}")]
    Annihilated { trace: f64, threshold: f64 },

    #[error("spectral parameter {0} sits on a pole (lambda = 1 or -1)")]
    SpectralPole(Complex64),

    #[error("stencil around |xi| = {radius} reaches into the excluded disc |xi| < {excluded}")]
    StencilOutOfDomain { radius: f64, excluded: f64 },

    #[error("invalid finite-difference step {0}")]
    InvalidStep(f64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("quadrature not converged: {coarse} vs {fine} (relative difference {relative:e})")]
    NotConverged { coarse: f64, fine: f64, relative: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
