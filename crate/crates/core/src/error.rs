use thiserror::Error;

use crate::typespace::Sign;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("product nesting depth exceeds 2")]
    ProductTooDeep,
    #[error("period {period} does not divide level {level}")]
    LevelMismatch { period: u64, level: u64 },
    #[error("{target} is not a divisor of level {level}")]
    NotADivisor { target: u64, level: u64 },
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("modulus {modulus} exceeds guard {guard}")]
    ModulusGuard { modulus: u64, guard: u64 },
    #[error("explicit window of width {width} exceeds limit {limit}")]
    WindowGuard { width: i64, limit: i64 },
    #[error("integer overflow")]
    Overflow,
    #[error("level too coarse: period {period} does not divide level {level}")]
    LevelTooCoarse { period: u64, level: u64 },
    #[error("generator does not act bijectively: {0}")]
    NonBijective(String),
    #[error("action violates a group relation: {0}")]
    RelationViolation(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("image is not dense: {0}")]
    ImageNotDense(String),
    #[error("not a partition into definable classes: {0}")]
    NotAPartition(String),
    #[error("limit along sign {sign} does not stabilize")]
    NoLimit { sign: Sign },
    #[error("unsupported backend for {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
