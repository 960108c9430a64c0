use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("permutation lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("rank {rank} out of range for n = {n}")]
    RankOutOfRange { rank: u64, n: usize },

    #[error("state space too large: n = {n} exceeds enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("graph must be connected for {0}")]
    Disconnected(&'static str),

    #[error("graph is not biconnected")]
    NotBiconnected,

    #[error("margin totals differ: rows sum to {rows}, columns to {cols}")]
    MarginMismatch { rows: u64, cols: u64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
