use hitchin_exact::ExactError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("element outside algebra")]
    OutsideAlgebra,
    #[error("empty subspace")]
    EmptySubspace,
    #[error("degree must be nonnegative, got {0}")]
    NegativeDegree(i64),
    #[error("rank must be positive")]
    ZeroRank,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("inconsistent ramification data")]
    InconsistentRamification,
    #[error("no η ↦ −η symmetry")]
    NoSymmetry,
    #[error("not a line bundle model")]
    NotLineBundle,
    #[error("non-reduced spectrum: eigenline undefined")]
    NonReducedSpectrum,
    #[error("σ undefined on this algebra")]
    SigmaUndefined,
    #[error("point not on the spectral curve: {0}")]
    PointOffCurve(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
