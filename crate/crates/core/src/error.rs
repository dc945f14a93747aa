use thiserror::Error;

/// Errors produced by the covercode library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {order} exceeds the field cap {cap}")]
    FieldTooLarge { order: u64, cap: u64 },

    #[error("field of order {sub} is not a subfield of the field of order {sup}")]
    NotASubfield { sub: u64, sup: u64 },

    #[error("the zero vector has no projective point")]
    ZeroVector,

    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("element {value} is outside the field of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },

    #[error("PG({dim},{q}) has {points} points, above the point cap {cap}")]
    SpaceTooLarge { dim: usize, q: u64, points: u128, cap: u64 },

    #[error("the point set meets every hyperplane (blocking set); no skew hyperplane exists")]
    BlockingSet,

    #[error("point {0} appears more than once")]
    DuplicatePoint(u64),

    #[error("operands are over different fields (orders {left} and {right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("syndrome space of size {size} exceeds the exhaustive cap {cap}")]
    SyndromeSpaceTooLarge { size: u128, cap: u64 },

    #[error("parity-check matrix has rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction exceeded max_steps = {0}")]
    MaxStepsExceeded(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("bound evaluation outside validity region: {0}")]
    OutsideValidity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
