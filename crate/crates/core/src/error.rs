use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside its allowed range.
    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix that must be invertible is (numerically) singular.
    #[error("degenerate input: matrix is singular (|det| = {det:e})")]
    Singular { det: f64 },

    /// A set of operation elements does not resolve the identity.
    #[error("operation elements violate completeness (max deviation {deviation:e})")]
    Incomplete { deviation: f64 },

    /// A matrix offered as a density matrix is not one.
    #[error("not a density matrix: {0}")]
    InvalidDensity(String),

    /// Every outcome of a sampled channel had zero probability.
    #[error("internal error: all outcome probabilities vanish")]
    NoOutcome,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
