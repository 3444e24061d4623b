use thiserror::Error;

use crate::lattice::Space;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("space mismatch: {left} vs {right}")]
    SpaceMismatch { left: Space, right: Space },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("length mismatch: expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid Cremona index set: {0}")]
    InvalidIndexSet(String),

    #[error("invalid join: {0}")]
    InvalidJoin(String),

    #[error("join is not orthogonal to the divisor (kappa = {kappa})")]
    NotOrthogonal { kappa: i64 },

    #[error("{0}")]
    Unreachable(String),

    #[error("invalid degree bound: {0}")]
    InvalidBound(String),

    #[error("a degree bound is required for {0}, which is not a Mori dream space")]
    MissingDegreeBound(Space),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("kind check failed: {0}")]
    KindMismatch(String),

    #[error("dual of an empty generator list is the full space of dimension {0}")]
    EmptyGenerators(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures caused by exceeding a configured size cap.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap(_))
    }
}
