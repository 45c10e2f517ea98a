use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("division by a non-invertible value")]
    NotInvertible,
    #[error("matrix size must be at least 2, got {0}")]
    SizeTooSmall(usize),
    #[error("unknown projection part {0:?}")]
    UnknownPart(String),
    #[error("level r = {r} out of range 0..={max} for n = {n}")]
    LevelOutOfRange { n: usize, r: usize, max: usize },
    #[error("coefficient index m = {m} out of range 0..={max} at level r = {r}")]
    CoefficientOutOfRange { m: usize, r: usize, max: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("point is not generic: E(0,{r}) vanishes")]
    NotGeneric { r: usize },
    #[error("not a lower Hessenberg point: {0}")]
    NotHessenberg(String),
    #[error("matrix is not in the required subspace: {0}")]
    NotInSubspace(String),
    #[error("zero diagonal entry at position {0}")]
    ZeroDiagonal(usize),
    #[error("entry must be positive: {0}")]
    NotPositive(String),
    #[error("sampling failed after {0} attempts")]
    SamplingExhausted(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("layer mismatch: {0} vs {1}")]
    LayerMismatch(usize, usize),
    #[error("missing chart slot {0}")]
    MissingSlot(String),
    #[error("flow left the generic locus at t = {t}: {source}")]
    FlowGenericityLost { t: f64, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
