use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ambient mismatch: nu {0:?} vs {1:?}")]
    NuMismatch(Option<u32>, Option<u32>),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncMismatch(u32, u32),
    #[error("tensor rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("coefficients carry h-content where a rational kernel was requested")]
    HContent,
    #[error("weight {weight} exceeds truncation {trunc}")]
    WeightExceeded { weight: u32, trunc: u32 },
    #[error("element is zero")]
    ZeroElement,
    #[error("negative h-valuation {valuation} in the {kind} basis at {at}")]
    NotIntegral { kind: String, valuation: i32, at: String },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
