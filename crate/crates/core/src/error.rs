use thiserror::Error;

/// Errors raised by the algebraic constructions and computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live in different quivers")]
    QuiverMismatch,

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("term `{0}` is not a cycle")]
    NotACycle(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("relation `{label}`: {reason}")]
    InvalidRelation { label: String, reason: String },

    #[error("arrow `{0}` must have degree 0")]
    NonZeroDegree(String),

    #[error("m must be at least {min}, got {m}")]
    InvalidM { m: i64, min: i64 },

    #[error("superpotential has degree {found}, expected {expected}")]
    DegreeMismatch { expected: i64, found: i64 },

    #[error("arrow `{0}` occurs in the superpotential")]
    ArrowInSuperpotential(String),

    #[error("differential of `{arrow}`: {reason}")]
    InvalidDifferential { arrow: String, reason: String },

    #[error("differential of `{0}` has a term of length zero, so truncating by path length is not a dg quotient")]
    TruncationNotDg(String),

    #[error("arrow `{0}` has positive degree")]
    PositiveDegree(String),

    #[error("relation `{0}` does not lie in the square of the arrow ideal")]
    NotInSquare(String),

    #[error("no admissibility bound N <= {0} found")]
    AdmissibilitySearchExhausted(usize),

    #[error("paths of length {bound} lie in the ideal only up to longer paths; no exact certificate found (ideal is likely not admissible)")]
    AdmissibilityNotCertified { bound: usize },

    #[error("{0} is not an admissibility bound for the ideal")]
    InvalidBound(usize),

    #[error("element has a term of length {len}, which the bound {bound} does not cover")]
    SupportTooLong { len: usize, bound: usize },

    #[error("candidate relation `{0}` does not lie in the ideal")]
    NotInIdeal(String),

    #[error("invalid arrow map: {0}")]
    InvalidMap(String),

    #[error("superpotential is not of the form sum of beta*omega_beta: {0}")]
    NotSplitSuperpotential(String),

    #[error("truncated complex too large: {0} basis paths in one degree")]
    TooLarge(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
