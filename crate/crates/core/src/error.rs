use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: pole at argument {arg}")]
    Pole { function: &'static str, arg: f64 },

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("{0}: result exceeds double range")]
    Overflow(&'static str),

    #[error("{what}: no convergence after {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("quadrature: tolerance {tol:e} not reached after {intervals} subintervals (error estimate {estimate:e})")]
    Quadrature { tol: f64, intervals: usize, estimate: f64 },

    #[error("oracle disagreement: {left} vs {right} (relative difference {rel:e})")]
    OracleDisagreement { left: f64, right: f64, rel: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Overflow(_)
                | Error::NonConvergence { .. }
                | Error::Quadrature { .. }
                | Error::OracleDisagreement { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
