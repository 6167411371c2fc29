use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("quandle order must be positive")]
    EmptyQuandle,

    #[error("table entry {value} at ({row}, {col}) is outside 0..{order}")]
    MalformedTable { row: usize, col: usize, value: usize, order: usize },

    #[error("operation table violates the quandle axioms: {0}")]
    AxiomViolation(String),

    #[error("scalar {t} is not invertible modulo {modulus}")]
    NotInvertible { t: u64, modulus: u64 },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("element {element} is outside the quandle of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("degree {0} is outside the supported range 1..=5")]
    UnsupportedDegree(usize),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("chain is not a cycle; its boundary is {boundary}")]
    NotACycle { boundary: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("coloring is not boundary-monochromatic")]
    NotBoundaryMonochromatic,

    #[error("tangle has no orientation-consistent closure")]
    NoClosure,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
