use thiserror::Error;

use crate::model::Kind;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("item {item} out of range for n = {n}")]
    ItemOutOfRange { item: usize, n: usize },

    #[error("solution type does not match instance kind {0}")]
    KindMismatch(Kind),

    #[error("constraint {0} cannot be evaluated on this solution type")]
    IncompatibleSolution(String),

    #[error("solution covers {got} items, instance has {expected}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("exhaustive enumeration infeasible: n = {n} exceeds cap {cap}")]
    EnumerationTooLarge { n: usize, cap: usize },

    #[error("value {0} outside the domain [0, pi]")]
    DomainViolation(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("item pool of size {n} is too small for constraints of arity {arity}")]
    PoolTooSmall { n: usize, arity: usize },

    #[error("balanced ground truth not reached after {0} attempts")]
    BalanceNotReached(usize),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),
}

pub type Result<T> = std::result::Result<T, Error>;
