use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group spec mismatch: {left} vs {right}")]
    SpecMismatch { left: String, right: String },

    #[error("invalid group spec: {0}")]
    InvalidGroup(String),

    #[error("group of order {order} exceeds enumeration bound {bound}")]
    EnumerationTooLarge { order: u64, bound: u64 },

    #[error("zero denominator in rational phase")]
    ZeroDenominator,

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("quadratic form has no value for element {0}")]
    MissingEntry(String),

    #[error("not a pure quadratic form: {0}")]
    InvalidQuadraticForm(String),

    #[error("cocycle condition fails: {0}")]
    InvalidCocycle(String),

    #[error("model is not modular (bilinear form is degenerate): {0}")]
    NonModular(String),

    #[error("dense dimension {dim} exceeds bound {bound}")]
    DenseBoundExceeded { dim: u64, bound: u64 },

    #[error("invalid genus {0}")]
    InvalidGenus(usize),

    #[error("invalid Humphries index {index} at genus {genus}: {reason}")]
    InvalidHumphriesIndex { genus: usize, index: usize, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator is not unitary (residual {residual:e})")]
    NonUnitary { residual: f64 },

    #[error("gate `{0}` is not a normalizer gate")]
    NotNormalizer(String),

    #[error("theorem check violated: {0}")]
    TheoremViolated(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
