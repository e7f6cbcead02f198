use thiserror::Error;

use crate::state::Basis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical parameter violates its domain; `field` names it.
    #[error("invalid value for `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("expected a density matrix in the {expected} basis, got {found}")]
    BasisMismatch { expected: Basis, found: Basis },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("analytic solver preconditions not met: {0}")]
    Precondition(String),

    #[error("no unique stationary state: {0}")]
    NoStationaryState(String),

    #[error("integrator failure at t = {t}: {reason}")]
    Integration { t: f64, reason: String },

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("config error: {0}")]
    Config(String),

    #[error("physicality check failed at t = {t}: {reason}")]
    Physicality { t: f64, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Errors raised by numerical evolution rather than by bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Integration { .. } | Error::NoConvergence(_) | Error::Physicality { .. }
        )
    }
}
