use thiserror::Error;

/// Errors raised by the exact and numerical evaluators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A product in a denominator vanishes and is not compensated by the numerator.
    #[error("pole: {0}")]
    Pole(String),

    /// An argument falls outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request is malformed (bad parameter combination, unsupported region, ...).
    #[error("invalid query: {0}")]
    InvalidQuery(String),

    /// A hypergeometric series has no nonpositive-integer numerator parameter.
    #[error("series does not terminate: {0}")]
    NonTerminating(String),

    /// A Gamma ratio could not be turned into rational Pochhammer factors.
    #[error("irreducible gamma ratio: {0}")]
    Irreducible(String),

    /// The exact result is not a rational number (e.g. x^a with irrational value).
    #[error("value is not rational: {0}")]
    NotRational(String),

    /// Quadrature failed to reach its target.
    #[error("quadrature did not converge: achieved error {achieved:e}, target {target:e}")]
    NonConvergence { achieved: f64, target: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that come from a mathematical singularity rather than bad input.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::Pole(_)
                | Error::Domain(_)
                | Error::NotRational(_)
                | Error::NonConvergence { .. }
        )
    }
}
