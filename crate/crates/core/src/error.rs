use thiserror::Error;

/// Failures surfaced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Quadrature did not reach its tolerance; the best estimate is kept.
    #[error("accuracy target missed: estimate {estimate} with error bound {bound}")]
    Accuracy { estimate: f64, bound: f64 },

    #[error("no root bracket found for 1/lambda = {target} within [{t_min}, {t_max}]")]
    NoRoot { target: f64, t_min: f64, t_max: f64 },

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("fit failed: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
