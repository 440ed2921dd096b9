use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("deformation matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),

    #[error("matrix is not square")]
    NotSquare,

    #[error("cannot parse rational {0:?}")]
    BadRational(String),

    #[error("grading mismatch: {0}")]
    GradingMismatch(String),

    #[error("element is not invariant: {0}")]
    NotInvariant(String),

    #[error("generator selection is not closed under products: {0}")]
    NotClosed(String),

    #[error("element is not expressible in matrix coefficients: {0}")]
    NotMatrixCoefficient(String),

    #[error("algebra has no antipode rule")]
    NoInverseRule,

    #[error("no coaction parent attached")]
    NoParent,

    #[error("support radius {radius} exceeds cutoff {cutoff}")]
    SupportExceedsCutoff { radius: i64, cutoff: i64 },

    #[error("Dirac operator is singular on the truncation; use a half-integer offset")]
    SingularDirac,

    #[error("no phase assignment in the search set yields an idempotent projector")]
    NoCertifiedPhases,

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("configuration error: {0}")]
    Config(String),
}
