use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Text that does not parse as a permutation, composition, or set thereof.
    #[error("parse error: {0}")]
    Parse(String),

    /// A value sequence that is not a bijection on 1..=n.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// An argument outside an operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Part-wise comparison of compositions with different lengths.
    #[error("length mismatch: left has {left} parts, right has {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A brute-force request beyond the configured bound.
    #[error("{what}: n = {requested} exceeds the resource bound {bound}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        bound: usize,
    },

    /// A pattern whose square-realizable block decomposition does not exist.
    #[error("{perm} is not square-realizable: block {block} (starting at position {position}) is not a singleton, 23..m1, or 34..m12")]
    NotSquareRealizable {
        perm: String,
        block: String,
        position: usize,
    },

    /// Counting against an empty set of composition patterns is undefined.
    #[error("empty composition set: counting requires at least one pattern")]
    EmptyCompositionSet,

    /// A b-file line that does not match `<index> <value>`.
    #[error("b-file parse error at line {line}: {message}")]
    BFileParse { line: usize, message: String },

    /// Network access failed or was forbidden by offline mode.
    #[error("network unavailable: {0}")]
    NetworkUnavailable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
