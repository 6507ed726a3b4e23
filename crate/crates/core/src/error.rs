use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse `{text}`: {reason}")]
    Parse { text: String, reason: String },

    #[error("parts {0:?} do not form a partition (need positive, weakly decreasing parts)")]
    NotAPartition(Vec<i64>),

    #[error("inner partition ({inner}) is not contained in outer partition ({outer})")]
    NotContained { outer: String, inner: String },

    #[error("box set is not a skew diagram: {0}")]
    NotASkewShape(String),

    #[error("shape has no box of content {0}")]
    EmptyDiagonal(i64),

    #[error("the first column of {0} contains a box")]
    FirstColumnOccupied(String),

    #[error("the first row of {0} contains a box")]
    FirstRowOccupied(String),

    #[error("shape {0} is not edgewise connected")]
    Disconnected(String),

    #[error("shape {0} is empty")]
    EmptyShape(String),

    #[error("expected {expected} {what}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("segment [{p},{q}] lies outside the strip contents {lo}..={hi}")]
    SegmentOutOfRange { p: i64, q: i64, lo: i64, hi: i64 },

    #[error("segment [{p},{q}] is not a strip")]
    NotAStrip { p: i64, q: i64 },

    #[error("twist content {i} is outside {lo}..={hi}")]
    TwistOutOfRange { i: i64, lo: i64, hi: i64 },

    #[error("no twist rule applies at content {0} (no box of smaller content)")]
    NoTwistRule(i64),

    #[error("invalid outside decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("polynomials live in different rings ({left} vs {right} variables)")]
    VarsMismatch { left: usize, right: usize },

    #[error("polynomial is not symmetric")]
    NotSymmetric,

    #[error("{vars} variables cannot faithfully represent degree {degree}")]
    TooFewVars { vars: usize, degree: usize },

    #[error("gluing needs nonempty operands")]
    EmptyOperand,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("op #{index} ({op}) failed: {reason}")]
    Replay {
        index: usize,
        op: String,
        reason: String,
    },

    #[error("{op}: index {index} out of range for size {size}")]
    IndexOutOfRange {
        op: &'static str,
        index: usize,
        size: usize,
    },

    #[error("destabilize needs first row and column equal to (1,0,...,0)")]
    DestabilizePattern,

    #[error("unexpected configuration: {0}")]
    Internal(String),
}
