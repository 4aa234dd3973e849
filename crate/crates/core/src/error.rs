use thiserror::Error;

/// Errors raised by the matrix engine, the inequality evaluators and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: ||M - M*||_F = {asymmetry:e} exceeds {limit:e}")]
    NotHermitian { asymmetry: f64, limit: f64 },

    #[error("Hermitian eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("matrix is not positive semidefinite: eigenvalue {min_eigenvalue:e} below {limit:e}")]
    NotPsd { min_eigenvalue: f64, limit: f64 },

    #[error("expected a unit vector, got norm {norm}")]
    NotUnitVector { norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("power index n = {n} exceeds the exact binomial range (n <= {max})")]
    Overflow { n: u32, max: u32 },

    #[error("quadratic coefficients must be finite and non-negative (a = {a}, b = {b})")]
    NegativeCoefficient { a: f64, b: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unknown bound identifier `{0}`")]
    UnknownBound(String),

    #[error("unknown chain identifier `{0}`")]
    UnknownChain(String),

    #[error("unknown function identifier `{0}`")]
    UnknownFunction(String),

    #[error("unknown ensemble `{0}`")]
    UnknownEnsemble(String),

    #[error("invalid ensemble configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed matrix or vector: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
