use thiserror::Error;

/// Errors raised by the numerical kernels, models, measures and pricers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter set violates its type invariants.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate}, error estimate {error})"
    )]
    QuadratureNonConvergence {
        subdivisions: usize,
        estimate: f64,
        error: f64,
    },

    #[error("root bracket [{lo}, {hi}] has no sign change (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root finder did not converge within {iterations} iterations")]
    RootNonConvergence { iterations: usize },

    /// The Esscher martingale condition has no solution.
    #[error("Esscher measure does not exist: {0}")]
    EsscherNonexistent(String),

    /// `E[exp(theta X)]` is infinite, so a cumulant-based construction fails.
    #[error("exponential moment does not exist: {0}")]
    MomentNonexistent(String),

    #[error("unsupported parametrization: {0}")]
    Unsupported(String),

    #[error("scheme `{scheme}` cannot simulate model `{model}`")]
    IncompatibleScheme { scheme: String, model: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Whether the error signals that a measure or moment does not exist,
    /// as opposed to a bad argument or a numerical failure.
    pub fn is_existence_error(&self) -> bool {
        matches!(self, Error::EsscherNonexistent(_) | Error::MomentNonexistent(_))
    }
}
