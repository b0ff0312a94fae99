use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid surface family: {0}")]
    InvalidFamily(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("class {0} is not a root")]
    NotARoot(String),

    #[error("weight {0} is not dominant")]
    NonDominant(String),

    #[error("base points are not pairwise distinct")]
    RepeatedPoints,

    #[error("expected {expected} base points, got {got}")]
    PointCount { expected: usize, got: usize },

    #[error("operation requires {expected}, got {got}")]
    WrongFamily { expected: String, got: String },

    #[error("unsupported class {0}")]
    UnsupportedClass(String),

    #[error("unsupported census target {0}")]
    UnsupportedTarget(String),

    #[error("class {0} does not satisfy D.C = 0")]
    NotOrthogonalToMarking(String),

    #[error("monomial enumeration exceeded the cap of {0}")]
    EnumerationOverflow(usize),

    #[error("no all-nonzero solution found")]
    NoSolution,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than a failed
    /// mathematical check.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_) | Error::InvalidLattice(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
