use alloc::string::String;

/// Errors raised by the library.
///
/// Domain errors are caller mistakes (bad sizes, violated preconditions).
/// `Invariant` signals that an internal identity failed to hold, which means a
/// bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::Error::Domain(alloc::format!($($arg)*))
    };
}
pub(crate) use domain;
