use std::fmt;

use num_complex::Complex64;

/// Error type shared by every evaluation routine in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation at a pole of the function (e.g. zeta at s = 1, gamma at -k).
    Pole { what: String },
    /// Argument outside the stated domain of the operation.
    Domain { what: String },
    /// Complex argument on a branch cut of the principal branch.
    Branch { what: String },
    /// Request beyond a configured capacity (sieve bound, piece count, ...).
    Capacity { requested: u64, limit: u64 },
    /// The requested tolerance could not be met. Carries the best estimate
    /// and the error bound actually achieved.
    Convergence {
        best: Complex64,
        achieved: f64,
        requested: f64,
    },
    /// Oscillatory regularization (Abel factor extrapolation) did not settle.
    Regularization { what: String },
    /// An assembled closed form disagrees with its independent oracle: the
    /// reconstruction is wrong, not the numerics.
    Assembly { what: String, diff: f64 },
    /// Suite selector matched no known identity.
    UnknownIdentity { pattern: String },
    /// Malformed configuration file or flag.
    Config { what: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { what } => write!(f, "pole: {what}"),
            Error::Domain { what } => write!(f, "domain error: {what}"),
            Error::Branch { what } => write!(f, "branch cut: {what}"),
            Error::Capacity { requested, limit } => {
                write!(f, "capacity exceeded: requested {requested}, limit {limit}")
            }
            Error::Convergence {
                best,
                achieved,
                requested,
            } => write!(
                f,
                "tolerance not met: best estimate {best}, achieved bound {achieved:.3e}, requested {requested:.3e}"
            ),
            Error::Regularization { what } => write!(f, "regularization failed: {what}"),
            Error::Assembly { what, diff } => {
                write!(f, "closed-form assembly disagrees with oracle ({what}, diff {diff:.3e})")
            }
            Error::UnknownIdentity { pattern } => {
                write!(f, "no identity matches '{pattern}'")
            }
            Error::Config { what } => write!(f, "config error: {what}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    pub fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }

    pub fn pole(what: impl Into<String>) -> Self {
        Error::Pole { what: what.into() }
    }

    pub fn branch(what: impl Into<String>) -> Self {
        Error::Branch { what: what.into() }
    }

    pub fn convergence_real(best: f64, achieved: f64, requested: f64) -> Self {
        Error::Convergence {
            best: Complex64::new(best, 0.0),
            achieved,
            requested,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
