use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero in the prime field")]
    DivisionByZero,

    #[error("contract violation: {0}")]
    Contract(String),

    /// A self-check on a constructed complex or chain map failed.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("bound resolution failed: {0}")]
    Bound(String),

    #[error("streaming and baseline verdicts disagree: {0}")]
    Disagreement(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
