use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An enumeration would exceed the configured element budget.
    BudgetExceeded { needed: u128, budget: usize },
    InvalidInput(String),
    /// Operands live over different rings or modules.
    RingMismatch,
    /// The operation needs a local ring.
    NotLocal,
    /// v-operations are defined for nonzero ideals only.
    ZeroIdeal,
    /// A generator list handed to a syzygy computation is not minimal.
    NotMinimal { given: usize, minimal: usize },
    /// An internal consistency assertion failed.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration of {needed} elements exceeds the budget of {budget}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::RingMismatch => f.write_str("operands belong to different rings"),
            Error::NotLocal => f.write_str("ring is not local"),
            Error::ZeroIdeal => f.write_str("the zero ideal has no v-closure"),
            Error::NotMinimal { given, minimal } => write!(
                f,
                "generating set of size {given} is not minimal (minimal size is {minimal})"
            ),
            Error::Internal(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
