use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("order {order} exceeds the supported maximum of {max}")]
    UnsupportedOrder { order: usize, max: usize },

    /// A root finder or series failed to settle within its iteration budget.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// The integrand returned a non-finite value.
    #[error("integrand evaluated to {value} at x = {abscissa}")]
    Evaluation { abscissa: f64, value: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The requested quantity is a distribution (a Dirac delta), not a number.
    #[error("distribution-valued case: {0}")]
    Distributional(String),

    /// The request is well-posed but deliberately not served by this routine.
    #[error("refused: {0}")]
    Refused(String),

    #[error("singular configuration: {0}")]
    Singular(String),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
