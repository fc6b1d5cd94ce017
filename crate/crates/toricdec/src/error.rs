use thiserror::Error;

/// Errors shared by the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("unknown cone index {0}")]
    UnknownCone(usize),

    #[error("operation not defined for the unit ideal")]
    UnitIdeal,

    #[error("class map is not surjective: {0}")]
    NonSurjectiveClassMap(String),

    #[error("setup has no fan; chart operations need a fan-derived grading")]
    NeedsFan,

    #[error("matrix is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("minor expansion bound exceeded: {rows}x{cols} matrix, bound {bound}")]
    MinorBoundExceeded { rows: usize, cols: usize, bound: usize },

    #[error("invalid input document: {0}")]
    Document(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
