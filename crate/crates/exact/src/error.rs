use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero input")]
    ZeroInput,
    #[error("zero module")]
    ZeroModule,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("not skew-symmetric of even order")]
    NotSkewEven,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not monic in eta")]
    NotMonic,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = ExactError> = std::result::Result<T, E>;
