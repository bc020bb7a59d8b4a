//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Construction of a distribution rejected (bad parameter, weights, centers).
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two specs that must share a center of symmetry do not.
    #[error("centers differ ({0} vs {1}); a common median is required")]
    CenterMismatch(f64, f64),

    /// Support hypothesis of the operation is violated.
    #[error("incompatible supports: {0}")]
    SupportMismatch(String),

    /// A quadrature or iterative solve did not reach its tolerance.
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),

    /// An estimator description cannot be realized by sampling.
    #[error("invalid estimator: {0}")]
    InvalidEstimator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
