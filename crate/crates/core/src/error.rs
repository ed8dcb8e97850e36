use crate::geometry::Point;
use crate::lp::LpError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Lp(#[from] LpError),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("constraint normal is the zero vector")]
    ZeroNormal,

    #[error("direction is the zero vector")]
    ZeroDirection,

    #[error("flat directions are linearly dependent")]
    DependentDirections,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Exact search would exceed a configured budget.
    #[error("{what} of size {size} exceeds the exact-search budget {limit}")]
    Scale {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("precondition violated: sets {first:?} and {second:?} do not intersect")]
    DisjointPair {
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("precondition violated: the family has a common point")]
    CommonPoint { point: Point },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A proven statement failed on concrete input. Indicates an input or
    /// solver bug; never expected on valid data.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("no generic direction found after {attempts} attempts: {directions:?}")]
    RetriesExhausted {
        attempts: usize,
        directions: Vec<String>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_scale(&self) -> bool {
        matches!(self, Error::Scale { .. })
    }
}
