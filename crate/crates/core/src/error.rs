use thiserror::Error;

/// Errors raised by geometric and metric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("singularity: {0}")]
    Singularity(&'static str),

    #[error("point lies outside the domain")]
    OutsideDomain,

    #[error("point lies on the domain boundary")]
    BoundaryPoint,

    #[error("degenerate triangle: vertex coincides with an endpoint")]
    DegenerateTriangle,

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("degenerate sampling window")]
    DegenerateWindow,

    #[error("polygon is not convex")]
    NonConvex,

    #[error("undefined: {0}")]
    Undefined(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
