use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("leading coefficient vanishes at index {index}")]
    SingularIndex { index: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("accuracy not reached: estimate {estimate:e}")]
    Accuracy { estimate: f64 },
    #[error("path error: {0}")]
    Path(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("singular fibre: {0}")]
    SingularFibre(String),
    #[error("search depth {depth} exceeded")]
    DepthExceeded { depth: usize },
    #[error("check failed: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
