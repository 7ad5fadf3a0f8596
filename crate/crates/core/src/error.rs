use thiserror::Error;

/// Failures reported by evaluation, reduction, minimization and certification.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("tolerance not met: truncation bound {achieved:e} > requested {requested:e} after {terms} terms")]
    ToleranceNotMet {
        achieved: f64,
        requested: f64,
        terms: usize,
    },

    #[error("degenerate denominator: |{value:e}| is within 10x its error bound {err:e}")]
    DegenerateDenominator { value: f64, err: f64 },

    #[error("quadrature not converged: estimate changed by {delta:e} with {panels} panels")]
    QuadratureNotConverged { delta: f64, panels: usize },

    #[error("minimizer not converged after {evaluations} function evaluations")]
    NotConverged { evaluations: usize },

    #[error("reduction did not terminate within {steps} steps (point near |z| = 1?)")]
    NonTermination { steps: usize },

    #[error("sign violation for {claim} at x={x}, y={y}: value {value:e}, err {err:e}")]
    Violation {
        claim: String,
        x: f64,
        y: f64,
        value: f64,
        err: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidDomain(msg.into()))
}
