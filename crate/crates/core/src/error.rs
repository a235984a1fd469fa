use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate triangle (collinear corners)")]
    DegenerateTriangle,
    #[error("no triangulation: all points are collinear")]
    NoTriangulation,
    #[error("capacity exceeded: {what} exceeds the limit of {limit}")]
    CapacityExceeded { what: &'static str, limit: usize },
    #[error("base is undefined for a zero count")]
    UndefinedBase,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
