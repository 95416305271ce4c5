use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("range [{lo}, {hi}] needs {requested} sieve entries, budget is {budget}")]
    CapacityExceeded {
        lo: u64,
        hi: u64,
        requested: u64,
        budget: u64,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("zeta has a pole at s = 1")]
    Pole,

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("malformed cache file {path}: {reason}")]
    Cache { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
