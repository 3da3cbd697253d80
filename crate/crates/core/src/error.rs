use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the code has no nonzero codewords")]
    EmptyCode,

    #[error("enumeration of 2^{log2_size} elements exceeds the cap of {cap}")]
    CapExceeded { log2_size: usize, cap: u64 },

    #[error("matrix has no nonzero entries")]
    EmptyMatrix,

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("code encodes no logical qubits")]
    NoLogicalQubits,

    #[error("target qubit count {target} is smaller than the current count {current}")]
    TargetTooSmall { target: usize, current: usize },

    #[error("target qubit count {target} exceeds the {capacity} available slots")]
    NoSlots { target: usize, capacity: usize },

    #[error("code has no layout")]
    MissingLayout,

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("fixed-rank sampling failed after {0} attempts")]
    SamplingFailed(usize),

    #[error("requested size is too large: {0}")]
    TooLarge(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
