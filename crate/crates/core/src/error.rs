use thiserror::Error;

/// Errors raised by the exact arithmetic, piecewise algebra and discretization layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("radicand {0} has a cofactor beyond the trial-division bound that could not be certified squarefree")]
    RadicandUnfactored(String),

    #[error("invalid piece: {0}")]
    InvalidPiece(String),

    #[error("unsupported product: {0}")]
    UnsupportedProduct(String),

    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),

    #[error("unsupported support computation: {0}")]
    UnsupportedSupport(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("enumeration cap of {cap} subsets exceeded")]
    CapExceeded { cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
