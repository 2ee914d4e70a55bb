use thiserror::Error;

/// Errors raised by the elimination library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("non-finite value in float matrix")]
    NonFinite,

    #[error("vector does not lie in the span of the basis (residual {residual})")]
    NotInSpan { residual: String },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("polynomial is not homogeneous (found degrees {found:?})")]
    NotHomogeneous { found: Vec<usize> },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid scalar literal {0:?}")]
    BadScalar(String),

    #[error("determinant of the pencil vanishes identically")]
    DegeneratePencil,

    #[error("point is not on the curve")]
    PointNotOnCurve,

    #[error("line is contained in the curve")]
    LineInCurve,

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("all pairing denominators vanish (points coincide projectively)")]
    AllDenominatorsZero,

    #[error("pairing expressions disagree: {0}")]
    DisagreementDetected(String),

    #[error("invalid basepoint: {0}")]
    InvalidBasepoint(String),

    #[error("non-generic input: {0}")]
    NonGeneric(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
