use thiserror::Error;

/// Coarse classification of failures, used by the CLI to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Computation,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {invariant} ({detail})")]
    InvalidField { invariant: &'static str, detail: String },

    #[error("operation is not defined for the rational field (degree 1)")]
    DegreeOne,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not a fundamental discriminant")]
    NonFundamental(i64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("p = {p} divides the index of Z[theta] or p^2 divides disc(poly); splitting at p is unreliable")]
    IndexDivisibility { p: u64 },

    #[error("no reliable splitting data for p = {p} in field {label}")]
    UnreliableSplitting { p: u64, label: String },

    #[error("field {0} has no splitting source (quadratic discriminant or defining polynomial required)")]
    NoSplittingSource(String),

    #[error("table limit {requested} exceeds memory cap {cap}")]
    MemoryBudget { requested: u64, cap: u64 },

    #[error("coefficient overflow at n = {0}")]
    Overflow(u64),

    #[error("x = {x} outside the valid range [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },

    #[error("degenerate fit: all residuals vanish on the grid")]
    DegenerateFit,

    #[error("tail bound {achieved:e} cannot reach target {target:e} below prime cap {cap}")]
    TailUnreachable { target: f64, achieved: f64, cap: u64 },

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("no prime-ideal norm at or below {0}")]
    EmptyNorms(f64),

    #[error("cache mismatch: {0}")]
    CacheMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidField { .. }
            | Error::DegreeOne
            | Error::Parse(_)
            | Error::NonFundamental(_)
            | Error::NotPrime(_)
            | Error::Parameter(_)
            | Error::OutOfRange { .. }
            | Error::MemoryBudget { .. }
            | Error::NoSplittingSource(_)
            | Error::Json(_) => ErrorKind::Validation,
            Error::IndexDivisibility { .. }
            | Error::UnreliableSplitting { .. }
            | Error::Overflow(_)
            | Error::DegenerateFit
            | Error::TailUnreachable { .. }
            | Error::EmptyNorms(_) => ErrorKind::Computation,
            Error::CacheMismatch(_) | Error::Io(_) => ErrorKind::Io,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
