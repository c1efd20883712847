use thiserror::Error;

/// Errors raised by the computational modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size {size} outside the supported range {min}..={max}")]
    SizeOutOfRange { size: usize, min: usize, max: usize },

    #[error("ground set sizes differ: {0} vs {1}")]
    GroundSizeMismatch(usize, usize),

    #[error("sizes differ: |lambda| = {0}, |mu| = {1}")]
    SizeMismatch(usize, usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("degree window out of representable range: {0}")]
    WindowRange(String),

    #[error("genus {g} is smaller than the number of tensor factors {s}; the insertion-cokernel identity is only claimed for g >= s")]
    BelowStableRange { g: usize, s: usize },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("resource cap exceeded: {what} would need {needed}, cap is {cap}")]
    ResourceCap { what: &'static str, needed: usize, cap: usize },

    #[error("invalid base series: {0}")]
    InvalidBase(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
