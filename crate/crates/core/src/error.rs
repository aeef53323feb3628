use num_complex::Complex64;
use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a pole at {at}")]
    Pole { at: Complex64 },
    #[error("word length {len} exceeds the length cutoff {cutoff}")]
    LengthOverflow { len: usize, cutoff: usize },
    #[error("monomial degree {degree} exceeds the symmetric-power cutoff {cutoff}")]
    SymOverflow { degree: u32, cutoff: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge within {terms} terms")]
    IterationLimit { terms: usize },
    #[error("path meets a singular fiber at t = {t}")]
    Singularity { t: f64 },
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("precision error: {0}")]
    Precision(String),
    #[error("regularization failed: residual {residual:e} (samples: {samples:?})")]
    Regularization {
        residual: f64,
        samples: Vec<(f64, Complex64)>,
    },
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
