use alloc::string::String;
use core::fmt;

/// Failure modes shared by every module of the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A divisor (or a base raised to a negative power) is the zero germ.
    DivisionByZero,
    /// The operation needs a limited argument but got an infinite one.
    InfiniteArgument,
    /// `pow_base` was handed a base `b <= 0`.
    NonPositiveBase,
    /// The input is well-formed but its value lies outside what the
    /// operation can represent.
    UnsupportedForm(String),
    /// A result exceeded the term-count or degree cap.
    CapExceeded { what: &'static str, limit: usize },
    /// Malformed text; `position` is a byte offset into the input.
    SyntaxError { position: usize, message: String },
    /// A digit query on a value outside `[0, 1)`.
    OutOfRange,
}

impl Error {
    /// Taxonomy name, as printed by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Self::DivisionByZero => "DivisionByZero",
            Self::InfiniteArgument => "InfiniteArgument",
            Self::NonPositiveBase => "NonPositiveBase",
            Self::UnsupportedForm(_) => "UnsupportedForm",
            Self::CapExceeded { .. } => "CapExceeded",
            Self::SyntaxError { .. } => "SyntaxError",
            Self::OutOfRange => "OutOfRange",
        }
    }

    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Self::SyntaxError {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn unsupported(message: impl Into<String>) -> Self {
        Self::UnsupportedForm(message.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DivisionByZero => write!(f, "DivisionByZero: divisor is the zero germ"),
            Self::InfiniteArgument => write!(f, "InfiniteArgument: argument is infinite"),
            Self::NonPositiveBase => write!(f, "NonPositiveBase: exponential base must be > 0"),
            Self::UnsupportedForm(msg) => write!(f, "UnsupportedForm: {msg}"),
            Self::CapExceeded { what, limit } => {
                write!(f, "CapExceeded: {what} exceeds the cap of {limit}")
            }
            Self::SyntaxError { position, message } => {
                write!(f, "SyntaxError at offset {position}: {message}")
            }
            Self::OutOfRange => write!(f, "OutOfRange: value must lie in [0, 1)"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
