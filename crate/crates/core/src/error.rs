use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure taxonomy shared by every module.
///
/// `Domain` covers violated preconditions on arguments, `InvalidData` covers
/// malformed observations, and the two numeric variants cover computations
/// that ran but could not deliver the requested accuracy.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions: \
         estimate {estimate}, achieved error {achieved_error:e}"
    )]
    QuadratureNonConvergence {
        estimate: f64,
        achieved_error: f64,
        subdivisions: usize,
    },

    #[error("numeric error: {0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
