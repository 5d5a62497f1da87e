use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("ring context mismatch")]
    ContextMismatch,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("normalization inconclusive: rewrite step cap exceeded")]
    RewriteCapExceeded,
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("even/odd rank sums differ: even {even} vs odd {odd}")]
    RankSumMismatch { even: usize, odd: usize },
    #[error("chain map has unverified squares (strict mode)")]
    UnverifiedChainMap,
    #[error("witness matrices must be square, one per generator, invertible over the integers")]
    BadWitness,
    #[error("exponent too large to expand")]
    ExponentTooLarge,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
