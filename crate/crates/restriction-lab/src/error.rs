//! Error type shared across the laboratory.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Quadrature grid too coarse for the requested evaluation.
    /// `required_h` is the spacing that would satisfy the resolution rule.
    #[error("grid under-resolved in {context}: h = {h:.3e}, required h <= {required_h:.3e}")]
    UnderResolved {
        context: &'static str,
        h: f64,
        required_h: f64,
    },

    #[error("degenerate cap pair: identical centers")]
    DegeneratePair,

    #[error("empty evaluation grid")]
    EmptyGrid,

    #[error("empty selection: {0}")]
    EmptySelection(String),

    #[error("non-singular verification failed after {retries} retries (min sampled |grad| = {min_grad:.3e})")]
    SingularPolynomial { retries: usize, min_grad: f64 },

    #[error("malformed config: {0}")]
    MalformedConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
