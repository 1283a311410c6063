use alloc::string::String;

/// Errors reported by every fallible operation in the crate.
///
/// Resource errors are ordinary results: callers decide whether to retry with
/// a larger cap or give up.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("element cap of {cap} exceeded while building layer {layer}")]
    Resource { cap: usize, layer: usize },
    #[error("rewriting system is not confluent: {overlap} reduces to both {left} and {right}")]
    Confluence {
        overlap: String,
        left: String,
        right: String,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
