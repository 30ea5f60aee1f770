use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_fn::log_gamma;

/// Gamma subordinator: `X_t ~ Gamma(shape = lambda t, rate = gamma_rate)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaParams {
    pub lambda: f64,
    pub gamma_rate: f64,
}

impl GammaParams {
    pub fn new(lambda: f64, gamma_rate: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) || !(gamma_rate > 0.0 && gamma_rate.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "gamma process needs lambda > 0 and rate > 0, got ({lambda}, {gamma_rate})"
            )));
        }
        Ok(Self { lambda, gamma_rate })
    }

    pub fn mean(&self, t: f64) -> f64 {
        self.lambda * t / self.gamma_rate
    }

    pub fn variance(&self, t: f64) -> f64 {
        self.lambda * t / (self.gamma_rate * self.gamma_rate)
    }

    /// Density of `X_t` at `x > 0`.
    pub fn density(&self, x: f64, t: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("gamma density needs x > 0, got {x}")));
        }
        let shape = self.lambda * t;
        let log_f = shape * self.gamma_rate.ln() + (shape - 1.0) * x.ln() - self.gamma_rate * x - log_gamma(shape)?;
        Ok(log_f.exp())
    }
}
