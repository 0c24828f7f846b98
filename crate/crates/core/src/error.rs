use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible fields: sqrt({left}) and sqrt({right})")]
    IncompatibleFields { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid field: {0} is not a square-free positive integer")]
    InvalidField(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate space: generators span rank {rank} < {dimension}")]
    DegenerateSpace { rank: usize, dimension: usize },

    #[error("generator {second} duplicates generator {first} up to sign")]
    DuplicateGenerator { first: usize, second: usize },

    #[error("generator {index} is not an extreme point: it equals {combination}")]
    RedundantGenerator { index: usize, combination: String },

    #[error("expected exactly {expected} extreme points, found {found}")]
    WrongExtremeCount { expected: usize, found: usize },

    #[error("dependency has fewer than two non-zero coefficients")]
    DegenerateDependency,

    #[error("operator is zero")]
    ZeroOperator,

    #[error("operator norm {0} exceeds one")]
    NormExceedsOne(String),

    #[error("operator norm {0} is not one")]
    NormNotOne(String),

    #[error("region is unbounded")]
    UnboundedRegion,

    #[error("instance too large: {what}")]
    TooLarge { what: String },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("internal geometry error: {0}")]
    InternalGeometry(String),

    #[error("falsification: {0}")]
    Falsification(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("invalid json: {0}")]
    Json(String),
}

impl Error {
    /// Short machine-readable tag, used in structured CLI error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IncompatibleFields { .. } => "IncompatibleFields",
            Error::DivisionByZero => "DivisionByZero",
            Error::Parse { .. } => "ParseError",
            Error::InvalidField(_) => "InvalidField",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DegenerateSpace { .. } => "DegenerateSpace",
            Error::DuplicateGenerator { .. } => "DuplicateGenerator",
            Error::RedundantGenerator { .. } => "RedundantGenerator",
            Error::WrongExtremeCount { .. } => "WrongExtremeCount",
            Error::DegenerateDependency => "DegenerateDependency",
            Error::ZeroOperator => "ZeroOperator",
            Error::NormExceedsOne(_) => "NormExceedsOne",
            Error::NormNotOne(_) => "NormNotOne",
            Error::UnboundedRegion => "UnboundedRegion",
            Error::TooLarge { .. } => "TooLarge",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::UnknownName(_) => "UnknownName",
            Error::InternalGeometry(_) => "InternalGeometry",
            Error::Falsification(_) => "Falsification",
            Error::Io(_) => "IoError",
            Error::Json(_) => "JsonError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
