use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set size {0} exceeds the supported maximum of 63")]
    GroundTooLarge(u32),

    #[error("mask {mask:#x} has bits outside a ground set of size {n}")]
    MaskOutOfRange { mask: u64, n: u32 },

    #[error("ground set mismatch: {left} vs {right}")]
    GroundMismatch { left: u32, right: u32 },

    #[error("malformed permutation: {0}")]
    BadPermutation(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("cannot parse graph spec `{spec}`: {reason}")]
    GraphSpec { spec: String, reason: String },

    #[error("vertex is not in the graph universe: {0}")]
    NotAVertex(String),

    #[error("family is not independent: vertices {0} and {1} are adjacent")]
    NotIndependent(usize, usize),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("fingerprint is not realizable: {0}")]
    InvalidFingerprint(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("empty family")]
    EmptyFamily,

    #[error("invalid symmetric chain decomposition: {0}")]
    InvalidScd(String),

    #[error("family text, line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
