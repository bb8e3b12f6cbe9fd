use thiserror::Error;

/// Errors raised by the valuation engine and its front-ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid operand: {0}")]
    InvalidOperand(String),

    #[error("invalid augmentation: {0}")]
    InvalidAugmentation(String),

    #[error("needs more precision: {0}")]
    NeedsMorePrecision(String),

    #[error("undefined for linear polynomials")]
    UndefinedForLinear,

    #[error("inseparable input: {0}")]
    InseparableInput(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("meet undefined for equal polynomials")]
    MeetUndefined,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Short machine-readable tag, used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidOperand(_) => "invalid-operand",
            Error::InvalidAugmentation(_) => "invalid-augmentation",
            Error::NeedsMorePrecision(_) => "needs-more-precision",
            Error::UndefinedForLinear => "undefined-for-linear",
            Error::InseparableInput(_) => "inseparable-input",
            Error::InvalidFrame(_) => "invalid-frame",
            Error::MeetUndefined => "meet-undefined",
            Error::Syntax { .. } => "syntax",
            Error::Inconsistent(_) => "inconsistent",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
