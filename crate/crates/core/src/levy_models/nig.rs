use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_fn::bessel_k_scaled;

/// Parameters of a normal inverse Gaussian Lévy process.
///
/// `X_t` has the NIG law with parameters `(alpha, beta, mu t, delta t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NigParams {
    /// Tail heaviness.
    pub alpha: f64,
    /// Asymmetry, `|beta| < alpha`.
    pub beta: f64,
    /// Location drift per unit time.
    pub mu: f64,
    /// Scale per unit time.
    pub delta: f64,
}

impl NigParams {
    pub fn new(alpha: f64, beta: f64, mu: f64, delta: f64) -> Result<Self> {
        let p = Self { alpha, beta, mu, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { alpha, beta, mu, delta } = *self;
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("NIG alpha must be > 0, got {alpha}")));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter(format!("NIG delta must be > 0, got {delta}")));
        }
        if !beta.is_finite() || !mu.is_finite() {
            return Err(Error::InvalidParameter("NIG beta and mu must be finite".into()));
        }
        if beta.abs() >= alpha {
            return Err(Error::InvalidParameter(format!(
                "NIG requires |beta| < alpha, got beta = {beta}, alpha = {alpha}"
            )));
        }
        Ok(())
    }

    /// Same process with a different asymmetry parameter.
    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::new(self.alpha, beta, self.mu, self.delta)
    }

    /// `sqrt(alpha^2 - beta^2)`.
    pub fn gamma(&self) -> f64 {
        ((self.alpha - self.beta) * (self.alpha + self.beta)).sqrt()
    }

    pub fn mean(&self, t: f64) -> f64 {
        t * (self.mu + self.delta * self.beta / self.gamma())
    }

    pub fn variance(&self, t: f64) -> f64 {
        t * self.delta * self.alpha * self.alpha / self.gamma().powi(3)
    }

    /// `kappa(theta) = mu theta + delta (sqrt(alpha^2 - beta^2) - sqrt(alpha^2 - (beta + theta)^2))`,
    /// so that `E[exp(theta X_t)] = exp(t kappa(theta))`.
    ///
    /// Fails with [`Error::MomentNonexistent`] when `|beta + theta| > alpha`.
    pub fn cumulant(&self, theta: f64) -> Result<f64> {
        let shifted = self.beta + theta;
        if !(shifted.abs() <= self.alpha) {
            return Err(Error::MomentNonexistent(format!(
                "NIG cumulant needs |beta + theta| <= alpha, got |{shifted}| > {}",
                self.alpha
            )));
        }
        let tilted = ((self.alpha - shifted) * (self.alpha + shifted)).sqrt();
        Ok(self.mu * theta + self.delta * (self.gamma() - tilted))
    }

    /// Density of `X_t` at `x`.
    pub fn density(&self, x: f64, t: f64) -> f64 {
        let delta = self.delta * t;
        let y = x - self.mu * t;
        let q = delta.hypot(y);
        let z = self.alpha * q;
        // K_1(z) = e^{-z} * scaled
        let k1 = bessel_k_scaled(1.0, z).expect("alpha * q > 0");
        let log_rest = delta * self.gamma() + self.beta * y - z;
        self.alpha * delta / PI * k1 / q * log_rest.exp()
    }

    /// Lévy density `nu(x) = delta alpha / (pi |x|) e^{beta x} K_1(alpha |x|)`.
    pub fn levy_density(&self, x: f64) -> Result<f64> {
        if x == 0.0 || !x.is_finite() {
            return Err(Error::Domain(format!("NIG Lévy density is undefined at x = {x}")));
        }
        let ax = x.abs();
        let k1 = bessel_k_scaled(1.0, self.alpha * ax)?;
        Ok(self.delta * self.alpha / (PI * ax) * k1 * (self.beta * x - self.alpha * ax).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fitted() -> NigParams {
        NigParams::new(81.6, 3.69, -0.000123, 0.0103).unwrap()
    }

    #[test]
    fn invariants() {
        assert!(NigParams::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(NigParams::new(1.0, -1.2, 0.0, 1.0).is_err());
        assert!(NigParams::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(NigParams::new(1.0, 0.0, 0.0, 0.0).is_err());
        assert!(NigParams::new(1.0, 0.99, 0.0, 1.0).is_ok());
    }

    #[test]
    fn cumulant_at_zero() {
        assert_eq!(fitted().cumulant(0.0).unwrap(), 0.0);
    }

    #[test]
    fn symmetric_cumulant_reduces() {
        let p = NigParams::new(3.0, 0.0, 0.0, 0.7).unwrap();
        for &xi in &[-2.5, -1.0, 0.4, 2.9] {
            let expected = 0.7 * (3.0 - (9.0f64 - xi * xi).sqrt());
            assert!((p.cumulant(xi).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn cumulant_domain() {
        let p = fitted();
        assert!(p.cumulant(p.alpha - p.beta).is_ok());
        assert!(matches!(
            p.cumulant(p.alpha - p.beta + 1e-6),
            Err(Error::MomentNonexistent(_))
        ));
    }

    #[test]
    fn symmetric_density_is_even() {
        let p = NigParams::new(2.0, 0.0, 0.0, 0.5).unwrap();
        for &x in &[0.01, 0.3, 1.7, 4.0] {
            assert_eq!(p.density(x, 1.3), p.density(-x, 1.3));
        }
    }

    #[test]
    fn levy_density_symmetry_and_origin() {
        let p = NigParams::new(2.0, 0.0, 0.1, 0.5).unwrap();
        assert_eq!(p.levy_density(0.8).unwrap(), p.levy_density(-0.8).unwrap());
        assert!(p.levy_density(0.0).is_err());
    }

    #[test]
    fn levy_density_small_x_asymptote() {
        // K_1(z) ~ 1/z, so x^2 nu(x) -> delta / pi
        let p = fitted();
        let x: f64 = 1e-7;
        let v = x * x * p.levy_density(x).unwrap();
        assert!(((v - p.delta / PI) / (p.delta / PI)).abs() < 1e-5, "{v}");
    }
}
