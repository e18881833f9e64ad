use thiserror::Error;

/// Errors raised by the division engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed caller input (bad interval, bad rational, wrong dimension, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A preference oracle broke its contract (for example returned no pieces).
    #[error("preference oracle contract violated: {0}")]
    OracleContract(String),

    /// A triangulation failed one of its structural invariants.
    #[error("triangulation invariant violated: {0}")]
    Triangulation(String),

    /// A labeling is not consistent where consistency was required.
    #[error("inconsistent labeling: {0}")]
    Inconsistent(String),

    /// A size guard tripped (cell count, enumeration count, grid size).
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        needed: String,
        cap: String,
    },

    /// No induced labeling with nonzero boundary degree was found. For n > 3
    /// existence is an open conjecture, so this is not a bug by itself.
    #[error("conjecture gap: no induced labeling with nonzero boundary degree among {searched} candidates (open conjecture for n = {n})")]
    ConjectureGap { n: usize, searched: u64 },

    /// Bisection requires a region with nonzero boundary degree.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed agent profile: {0}")]
    Profile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
