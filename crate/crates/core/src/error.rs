use thiserror::Error;

use crate::chain::ChainError;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("target must be a positive integer")]
    ZeroTarget,

    #[error("target {0} is outside the searchable range (< 2^62)")]
    TargetTooLarge(String),

    #[error("node budget exhausted for n={n} ({class}); best known upper bound {upper_bound}")]
    BudgetExhausted {
        n: u64,
        class: String,
        upper_bound: u32,
        nodes: u64,
    },

    #[error(transparent)]
    Chain(#[from] ChainError),

    #[error("cache conflict for ({class}, {n}): {existing} vs {incoming}")]
    CacheConflict {
        class: String,
        n: u64,
        existing: u32,
        incoming: u32,
    },

    #[error("cache file {path}: {message}")]
    CacheFile { path: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precision {0} bits is too low (need at least 16)")]
    PrecisionTooLow(u32),
}
