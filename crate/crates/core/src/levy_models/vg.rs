//! Variance gamma process.
//!
//! `Y_t = x0 t + beta X_t + sigma B(X_t)` where `X` is a gamma subordinator
//! with `X_t ~ Gamma(lambda t, gamma_rate)` and `B` an independent Brownian
//! motion. `x0` is a drift rate, which keeps increments stationary.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_fn::{bessel_k_scaled, log_gamma};

use super::GammaParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VgParams {
    /// Linear drift rate.
    pub x0: f64,
    /// Shape rate of the gamma clock.
    pub lambda: f64,
    /// Rate of the gamma clock.
    pub gamma_rate: f64,
    /// Brownian drift.
    pub beta: f64,
    /// Brownian volatility.
    pub sigma: f64,
}

/// Unit-mean-clock parametrization: the subordinator has mean rate 1 and
/// variance rate `nu`, and `x0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VgMeanVarianceParams {
    pub beta: f64,
    pub sigma: f64,
    pub nu: f64,
}

/// VG increments as `G+ - G-`, two independent gamma processes with mean
/// rates `mu_plus`, `mu_minus` and variance rates `nu_plus`, `nu_minus`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaDifference {
    pub mu_plus: f64,
    pub mu_minus: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
}

impl VgParams {
    pub fn new(x0: f64, lambda: f64, gamma_rate: f64, beta: f64, sigma: f64) -> Result<Self> {
        let p = Self {
            x0,
            lambda,
            gamma_rate,
            beta,
            sigma,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |v: f64| v > 0.0 && v.is_finite();
        if !pos(self.lambda) || !pos(self.gamma_rate) || !pos(self.sigma) {
            return Err(Error::InvalidParameter(format!(
                "VG needs lambda, gamma_rate, sigma > 0, got ({}, {}, {})",
                self.lambda, self.gamma_rate, self.sigma
            )));
        }
        if !self.x0.is_finite() || !self.beta.is_finite() {
            return Err(Error::InvalidParameter("VG x0 and beta must be finite".into()));
        }
        Ok(())
    }

    pub fn clock(&self) -> GammaParams {
        GammaParams {
            lambda: self.lambda,
            gamma_rate: self.gamma_rate,
        }
    }

    pub fn mean(&self, t: f64) -> f64 {
        t * (self.x0 + self.beta * self.lambda / self.gamma_rate)
    }

    pub fn variance(&self, t: f64) -> f64 {
        let g = self.gamma_rate;
        t * self.lambda * (self.sigma * self.sigma / g + self.beta * self.beta / (g * g))
    }

    /// `kappa(theta) = x0 theta - lambda ln(1 - (beta theta + sigma^2 theta^2 / 2) / gamma_rate)`.
    ///
    /// Fails with [`Error::MomentNonexistent`] when the log argument is not positive.
    pub fn cumulant(&self, theta: f64) -> Result<f64> {
        let s = (self.beta * theta + 0.5 * self.sigma * self.sigma * theta * theta) / self.gamma_rate;
        if !(s < 1.0) {
            return Err(Error::MomentNonexistent(format!(
                "VG cumulant at theta = {theta}: beta theta + sigma^2 theta^2 / 2 >= gamma_rate"
            )));
        }
        Ok(self.x0 * theta - self.lambda * (-s).ln_1p())
    }

    /// Density of `Y_t` at `x`.
    ///
    /// When `lambda t <= 1/2` the density diverges at `x = x0 t`; the value
    /// there is `+inf`.
    pub fn density(&self, x: f64, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("VG density needs t > 0, got {t}")));
        }
        let shape = self.lambda * t;
        let sigma2 = self.sigma * self.sigma;
        let s = (self.beta * self.beta / sigma2 + 2.0 * self.gamma_rate).sqrt();
        let order = shape - 0.5;
        let y = x - self.x0 * t;
        let log_const = 0.5 * (2.0 / (PI * sigma2)).ln() + shape * self.gamma_rate.ln() - log_gamma(shape)?;
        if y == 0.0 {
            if order <= 0.0 {
                return Ok(f64::INFINITY);
            }
            // |u|^nu K_nu(s |u|) -> Gamma(nu) 2^(nu-1) s^(-nu) as u -> 0
            let log_f = log_const - order * s.ln() + log_gamma(order)? + (order - 1.0) * 2f64.ln() - order * s.ln();
            return Ok(log_f.exp());
        }
        let u = y.abs() / self.sigma;
        let z = u * s;
        let k = bessel_k_scaled(order, z)?;
        let log_f = log_const + self.beta * y / sigma2 + order * (u / s).ln() + k.ln() - z;
        Ok(log_f.exp())
    }

    /// The same law written with a unit-mean clock, plus the drift rate `x0`.
    ///
    /// `beta X_t + sigma B(X_t)` with `X_t ~ Gamma(lambda t, g)` equals in law
    /// `(beta lambda / g) X'_t + sigma sqrt(lambda / g) B(X'_t)` with `X'`
    /// a unit-mean clock of variance rate `1 / lambda`.
    pub fn to_mean_variance(&self) -> (f64, VgMeanVarianceParams) {
        let clock_mean = self.lambda / self.gamma_rate;
        (
            self.x0,
            VgMeanVarianceParams {
                beta: self.beta * clock_mean,
                sigma: self.sigma * clock_mean.sqrt(),
                nu: 1.0 / self.lambda,
            },
        )
    }
}

impl VgMeanVarianceParams {
    pub fn new(beta: f64, sigma: f64, nu: f64) -> Result<Self> {
        let p = Self { beta, sigma, nu };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) || !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "VG needs sigma > 0 and nu > 0, got sigma = {}, nu = {}",
                self.sigma, self.nu
            )));
        }
        if !self.beta.is_finite() {
            return Err(Error::InvalidParameter("VG beta must be finite".into()));
        }
        Ok(())
    }

    /// `lambda = gamma_rate = 1 / nu`, `x0 = 0`.
    pub fn to_vg(&self) -> VgParams {
        VgParams {
            x0: 0.0,
            lambda: 1.0 / self.nu,
            gamma_rate: 1.0 / self.nu,
            beta: self.beta,
            sigma: self.sigma,
        }
    }

    /// `E[exp(i u Y_t)] = (1 - i u beta nu + sigma^2 nu u^2 / 2)^(-t / nu)`.
    pub fn char_function(&self, u: f64, t: f64) -> Complex64 {
        let base = Complex64::new(
            1.0 + 0.5 * self.sigma * self.sigma * self.nu * u * u,
            -u * self.beta * self.nu,
        );
        base.powf(-t / self.nu)
    }

    /// Mean and variance rates of the two gamma processes in `Y = G+ - G-`.
    pub fn gamma_difference(&self) -> GammaDifference {
        let root = (self.beta * self.beta + 2.0 * self.sigma * self.sigma / self.nu).sqrt();
        let mu_plus = 0.5 * (root + self.beta);
        let mu_minus = 0.5 * (root - self.beta);
        GammaDifference {
            mu_plus,
            mu_minus,
            nu_plus: mu_plus * mu_plus * self.nu,
            nu_minus: mu_minus * mu_minus * self.nu,
        }
    }
}

impl GammaDifference {
    /// Shape and rate per unit time of `G+`: `(mu+^2 / nu+, mu+ / nu+)`.
    pub fn plus_shape_rate(&self) -> (f64, f64) {
        (self.mu_plus * self.mu_plus / self.nu_plus, self.mu_plus / self.nu_plus)
    }

    /// Shape and rate per unit time of `G-`.
    pub fn minus_shape_rate(&self) -> (f64, f64) {
        (
            self.mu_minus * self.mu_minus / self.nu_minus,
            self.mu_minus / self.nu_minus,
        )
    }
}
