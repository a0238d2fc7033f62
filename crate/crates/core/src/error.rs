use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("ring is not artinian")]
    NotArtinian,
    #[error("degree cap {cap} too low; need at least {needed}")]
    CapTooLow { cap: i32, needed: i32 },
    #[error("not a complex: composition {at} is nonzero at entry ({row}, {col})")]
    NotAComplex { at: usize, row: usize, col: usize },
    #[error("matrix is not minimal: unit entry at ({row}, {col})")]
    NotMinimal { row: usize, col: usize },
    #[error("variable name clash: {0}")]
    NameClash(String),
    #[error("resolution depth {have} too low; need {needed}")]
    DepthTooLow { have: usize, needed: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("characteristic 2 is not supported here")]
    CharTwo,
    #[error("invalid unit: {0}")]
    InvalidUnit(String),
    #[error("tracking lost: {0}")]
    TrackingLost(String),
    #[error("spliced complex is not exact: {0}")]
    SpliceBroken(String),
    #[error("lifted complex not divisible by the regular element: {0}")]
    LiftBroken(String),
    #[error("bad embedding: {0}")]
    BadEmbedding(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown reference: {0}")]
    UnknownReference(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
