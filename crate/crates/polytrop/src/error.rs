use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no primitive direction")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ambient dimension {0} exceeds the supported maximum of 6")]
    UnsupportedDimension(usize),

    #[error("unimodularity requires a triangulation (cell {0} is not a simplex)")]
    NotATriangulation(usize),

    #[error("subdivision has no lifting")]
    MissingLifting,

    #[error("lifting does not induce this subdivision")]
    InvalidLifting,

    #[error("contact data not supported on this complex")]
    UnsupportedContact,

    #[error("point lies outside the support of the complex")]
    OutsideSupport,

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("flattening did not terminate within {0} rounds")]
    FlatteningBudget(usize),

    #[error("stabilization would erase a marked vertex")]
    MarkedUnstableVertex,

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
