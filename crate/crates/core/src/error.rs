use thiserror::Error;

/// Errors raised by heap construction, the succinct structures, matching and
/// index-file handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("the heap is finalized; no more letters can be appended")]
    AlreadyFinalized,

    #[error("the heap must be finalized first")]
    NotFinalized,

    #[error("text longer than {max} letters is not supported")]
    TextTooLong { max: usize },

    #[error("{what} {value} out of range (limit {max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("parenthesis sequence is not balanced")]
    Unbalanced,

    #[error("bit {0} is not an open parenthesis")]
    NotAnOpen(usize),

    #[error("maximal-reach depths decrease by more than one at position {position}")]
    CorruptMrp { position: usize },

    #[error("pattern must be nonempty")]
    EmptyPattern,

    #[error("index file version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("malformed index: {0}")]
    MalformedIndex(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
