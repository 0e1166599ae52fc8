//! Library error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Options failed up-front validation (limits of zero, inverted
    /// tolerances, ...). Non-convergence is *not* an error: integration
    /// always returns an enclosure, flagged `converged: false` when a limit
    /// was hit.
    #[error("invalid integration options: {0}")]
    InvalidOptions(String),

    /// A quadrature node could not be certified by the interval Newton step.
    /// Indicates a working-precision so low the nodes cannot be separated.
    #[error("failed to certify Gauss-Legendre node {node} of degree {degree}")]
    Certification { degree: u32, node: u32 },

    /// Unparseable ball / box serialization.
    #[error("cannot parse {0:?} as a ball")]
    Parse(String),
}
