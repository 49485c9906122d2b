use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the object is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical result could not be certified to the requested accuracy.
    /// `best` carries the best available estimate when there is one.
    #[error("accuracy error: {msg}")]
    Accuracy { msg: String, best: Option<f64> },

    /// An iterative eigen/SVD routine failed to converge.
    #[error("non-convergence: {0}")]
    NonConvergence(String),

    /// A size or budget limit was exceeded.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// No evaluation route exists for the requested combination of inputs.
    #[error("unsupported route: {0}")]
    Unsupported(String),

    /// A mathematical invariant was violated by the inputs (e.g. a matrix that
    /// was supposed to be unitary is not).
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// Malformed user input (CLI arguments, empty tables, ...).
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn accuracy(msg: impl Into<String>, best: Option<f64>) -> Self {
        Error::Accuracy { msg: msg.into(), best }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Accuracy { .. } | Error::NonConvergence(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
