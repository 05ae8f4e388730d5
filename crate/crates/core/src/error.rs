use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The regularizer is `+∞` at the anchor point of a proximal step.
    #[error("infeasible anchor: regularizer is +inf at the current point")]
    InfeasibleAnchor,

    #[error("grid oracle does not support the non-separable regularizer {0}")]
    UnsupportedOracle(&'static str),

    #[error("{solver} does not support the nonconvex regularizer {reg}")]
    UnsupportedRegularizer {
        solver: &'static str,
        reg: &'static str,
    },

    #[error("metric '{0}' is not defined for this problem")]
    UnsupportedMetric(&'static str),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("numerical failure at iteration {t}: {what}")]
    Numerical { t: usize, what: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
