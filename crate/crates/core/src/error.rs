use thiserror::Error;

use crate::ComplexPoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {0} is not finite")]
    NonFinite(ComplexPoint),

    #[error("{function} has a pole at {at}")]
    Pole {
        function: &'static str,
        at: ComplexPoint,
    },

    #[error("{0}")]
    Domain(String),

    /// The result does not fit in binary64; `log_value` is the logarithm of
    /// the true value so callers can keep working in scaled form.
    #[error("{function} over/underflows binary64 (log value {log_value})")]
    Overflow {
        function: &'static str,
        log_value: ComplexPoint,
    },

    #[error("{what} did not reach tolerance {tolerance:e} (attained {attained:e})")]
    Budget {
        what: &'static str,
        attained: f64,
        tolerance: f64,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("integer overflow while {0}")]
    IntegerOverflow(&'static str),

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
