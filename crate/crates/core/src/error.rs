use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the region where the routine is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// The argument sits on a pole (log-gamma at a nonpositive integer).
    #[error("pole at {0}")]
    Pole(String),
    /// An iterative or adaptive procedure ran out of budget.
    #[error("did not converge: {0}")]
    NonConvergence(String),
    /// No continuation path keeps the required distance from the singular points.
    #[error("path error: {0}")]
    Path(String),
    /// The problem is too ill-conditioned to evaluate reliably.
    #[error("ill-conditioned: {0}")]
    Conditioning(String),
    /// Bad user-supplied data (spectrum files, configuration).
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn no_conv(msg: impl Into<String>) -> Self {
        Error::NonConvergence(msg.into())
    }

    /// True for failures caused by the inputs rather than by the numerics.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::NonConvergence(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
