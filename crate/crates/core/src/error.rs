use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("free-path argument must be nonnegative, got {0}")]
    NegativeFreePath(f64),

    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),

    #[error("Gauss-Legendre root finding did not converge for order {order}")]
    QuadratureNotConverged { order: usize },

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("singular {0}")]
    Singular(&'static str),

    #[error("relative deviation undefined at grid point {index}: reference value is zero")]
    ZeroReference { index: usize },

    #[error("invalid configuration: {key}: {reason}")]
    InvalidConfig { key: &'static str, reason: String },
}

impl Error {
    pub(crate) fn config(key: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            key,
            reason: reason.into(),
        }
    }
}
