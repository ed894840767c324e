use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("signature mismatch: arity {0} vs {1}")]
    Signature(usize, usize),
    #[error("n mismatch: X_{0} vs X_{1}")]
    NMismatch(u64, u64),
    #[error("misaligned: {0}")]
    Alignment(String),
    #[error("component narrower than slack: {0}")]
    Slack(String),
    #[error("hard bound exceeded: {0}")]
    Bound(String),
    #[error("unit mismatch: {0}")]
    UnitMismatch(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
