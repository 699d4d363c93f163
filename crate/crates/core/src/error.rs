use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method ran out of budget before meeting its tolerance.
    #[error(
        "accuracy error: {context}: best estimate {estimate:e}, achieved error {achieved_error:e}"
    )]
    Accuracy {
        context: String,
        estimate: f64,
        achieved_error: f64,
    },

    /// A function returned a non-finite value at a point where it must be finite.
    #[error("evaluation error: non-finite value {value} at x = {at}")]
    Evaluation { at: f64, value: f64 },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
