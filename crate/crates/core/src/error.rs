//! Error type shared by every module in this crate.

use thiserror::Error;

/// Crate-wide error enum. Variants are grouped by the kind of misuse they
/// signal so callers can map them onto process exit codes or retries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A computation needs more observations than the input provides.
    #[error("insufficient data: needed at least {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// A value is outside the mathematical domain of the operation
    /// (non-positive price, net return at or below -100%, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two inputs that must agree in shape do not.
    #[error("shape mismatch for {what}: expected {expected}, got {got}")]
    Shape {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// A zero-cost long-short construction was attempted from legs whose
    /// initial values differ.
    #[error("zero-cost violation: long leg starts at {long}, short leg at {short}")]
    ZeroCost { long: f64, short: f64 },

    /// Returns were requested for a series that starts at zero value, where
    /// no return convention is defined.
    #[error("returns are undefined for a series with zero initial value")]
    ReturnsUndefined,

    /// The regression design matrix is singular (constant or collinear
    /// factors).
    #[error("singular regression design: factor matrix is not invertible")]
    SingularDesign,

    /// A statistic is undefined because the series has no dispersion.
    #[error("degenerate series: zero dispersion makes the statistic undefined")]
    DegenerateSeries,

    /// A portfolio name is not present in a market snapshot.
    #[error("unknown portfolio: {0:?}")]
    UnknownPortfolio(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for a [`Error::Domain`] with a formatted message.
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
