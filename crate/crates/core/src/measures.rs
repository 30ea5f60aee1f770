//! Risk-neutral measures for exponential Lévy models.
//!
//! Two constructions are provided:
//!
//! * **Esscher**: tilt the law of the Lévy part by `exp(theta* X)`, with
//!   `theta*` solving `kappa(theta + 1) - kappa(theta) = target`. The tilted
//!   process stays in the same family (NIG: `beta -> beta + theta*`; VG:
//!   `beta -> beta + sigma^2 theta*`, `gamma -> gamma - beta theta* - sigma^2 theta*^2 / 2`).
//! * **Mean-correcting**: keep the law and add the drift `r + omega` with
//!   `omega = -kappa(1)`.
//!
//! Every [`RiskNeutralModel`] uses the log-price dynamics
//! `ln S_t = ln S_0 + drift_rate * t + L_t` where `L` is its (risk-neutral)
//! Lévy part. For the Esscher measure `drift_rate = r - target`, so the NIG
//! construction (target `r`) has zero extra drift and the VG construction
//! (target 0) uses `S_t = S_0 exp(r t + Y_t)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy_models::{LevyModel, NigParams, VgMeanVarianceParams, VgParams};
use crate::special_fn::find_root;

/// Largest tolerated `|kappa(theta* + 1) - kappa(theta*) - target|`.
pub const ESSCHER_RESIDUAL_TOL: f64 = 1e-10;
/// Default `x0` for the VG Esscher construction, which is undefined at `x0 = 0`.
pub const DEFAULT_VG_ESSCHER_X0: f64 = 1e-8;
const BRACKET_SHRINK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketData {
    /// Initial spot.
    pub s0: f64,
    /// Continuously compounded annual risk-free rate.
    pub r: f64,
    /// Maturity in years.
    pub maturity: f64,
}

impl MarketData {
    pub fn new(s0: f64, r: f64, maturity: f64) -> Result<Self> {
        let m = Self { s0, r, maturity };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s0 > 0.0 && self.s0.is_finite()) {
            return Err(Error::InvalidParameter(format!("s0 must be > 0, got {}", self.s0)));
        }
        if !(self.maturity > 0.0 && self.maturity.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "maturity must be > 0, got {}",
                self.maturity
            )));
        }
        if !self.r.is_finite() {
            return Err(Error::InvalidParameter("r must be finite".into()));
        }
        Ok(())
    }

    pub fn discount_factor(&self) -> f64 {
        (-self.r * self.maturity).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    Esscher,
    #[serde(alias = "mean-correct", alias = "mean_correcting")]
    MeanCorrect,
}

impl MeasureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureKind::Esscher => "esscher",
            MeasureKind::MeanCorrect => "mean_correct",
        }
    }
}

impl std::fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Solution of the Esscher martingale equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EsscherSolution {
    pub theta_star: f64,
    /// The Lévy part under the Esscher measure.
    pub risk_neutral: LevyModel,
    /// Right-hand side `c` of `kappa(theta + 1) - kappa(theta) = c`.
    pub target: f64,
    /// `kappa(theta* + 1) - kappa(theta*) - target`, with the original cumulant.
    pub residual: f64,
}

/// Solves `cumulant(theta + 1) - cumulant(theta) = target` on `bracket`.
///
/// Cumulant evaluation errors inside the bracket are treated as "no
/// solution", so callers should keep the bracket inside the domain.
pub fn esscher_theta<F>(cumulant: F, target: f64, bracket: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let g = |theta: f64| match (cumulant(theta + 1.0), cumulant(theta)) {
        (Ok(a), Ok(b)) => a - b - target,
        _ => f64::NAN,
    };
    let theta = find_root(g, bracket.0, bracket.1, 1e-15).map_err(|e| match e {
        Error::InvalidBracket { lo, hi, .. } => Error::EsscherNonexistent(format!(
            "kappa(theta + 1) - kappa(theta) - {target} has no sign change on [{lo}, {hi}]"
        )),
        other => other,
    })?;
    let residual = g(theta);
    if !(residual.abs() <= ESSCHER_RESIDUAL_TOL) {
        return Err(Error::RootNonConvergence { iterations: 0 });
    }
    Ok(theta)
}

/// Default root bracket: the (bounded) set where both `kappa(theta)` and
/// `kappa(theta + 1)` exist, shrunk away from its ends.
pub fn esscher_bracket(model: &LevyModel) -> Result<(f64, f64)> {
    let (lo, hi) = match model {
        // |beta + theta| < alpha and |beta + theta + 1| < alpha
        LevyModel::Nig(p) => (-p.alpha - p.beta, p.alpha - p.beta - 1.0),
        // beta theta + sigma^2 theta^2 / 2 < gamma at theta and theta + 1
        LevyModel::Vg(p) => {
            let s2 = p.sigma * p.sigma;
            let root = (p.beta * p.beta + 2.0 * s2 * p.gamma_rate).sqrt();
            ((-p.beta - root) / s2, (-p.beta + root) / s2 - 1.0)
        }
    };
    let lo = lo + BRACKET_SHRINK;
    let hi = hi - BRACKET_SHRINK;
    if !(lo < hi) {
        return Err(Error::EsscherNonexistent(format!(
            "exponential moments of orders theta and theta + 1 never coexist ({lo} >= {hi})"
        )));
    }
    Ok((lo, hi))
}

/// The Esscher-tilted Lévy part: the law of `L` under `exp(theta L_t - t kappa(theta))`.
pub fn esscher_tilt(model: &LevyModel, theta: f64) -> Result<LevyModel> {
    model.cumulant(theta)?;
    match model {
        LevyModel::Nig(p) => Ok(LevyModel::Nig(p.with_beta(p.beta + theta)?)),
        LevyModel::Vg(p) => {
            let s2 = p.sigma * p.sigma;
            Ok(LevyModel::Vg(VgParams::new(
                p.x0,
                p.lambda,
                p.gamma_rate - p.beta * theta - 0.5 * s2 * theta * theta,
                p.beta + s2 * theta,
                p.sigma,
            )?))
        }
    }
}

/// Esscher measure by numerical root-solve on the default bracket.
pub fn esscher_numeric(model: &LevyModel, target: f64) -> Result<EsscherSolution> {
    let bracket = esscher_bracket(model)?;
    let theta_star = esscher_theta(|th| model.cumulant(th), target, bracket)?;
    let risk_neutral = esscher_tilt(model, theta_star)?;
    let residual = esscher_residual(model, theta_star, target)?;
    Ok(EsscherSolution {
        theta_star,
        risk_neutral,
        target,
        residual,
    })
}

fn esscher_residual(model: &LevyModel, theta: f64, target: f64) -> Result<f64> {
    Ok(model.cumulant(theta + 1.0)? - model.cumulant(theta)? - target)
}

/// Closed-form Esscher measure for NIG, solving `kappa(theta + 1) - kappa(theta) = r`
/// (the martingale condition for `S_t = S_0 exp(X_t)`).
///
/// `beta* = -1/2 + sgn(r - mu) sqrt(alpha^2 (mu - r)^2 / (delta^2 + (mu - r)^2) - (mu - r)^2 / (4 delta^2))`.
pub fn nig_esscher(p: &NigParams, market: &MarketData) -> Result<EsscherSolution> {
    p.validate()?;
    market.validate()?;
    let NigParams { alpha, beta, mu, delta } = *p;
    let excess = mu - market.r;
    let e2 = excess * excess;
    let radicand = alpha * alpha * e2 / (delta * delta + e2) - e2 / (4.0 * delta * delta);
    if radicand < 0.0 {
        return Err(Error::EsscherNonexistent(format!(
            "NIG Esscher closed form has a negative radicand ({radicand})"
        )));
    }
    // The positive root is the solution when r > mu; the other branch is
    // the one that satisfies the unsquared equation when r < mu.
    let beta_star = -0.5 - excess.signum() * radicand.sqrt();
    if !(beta_star.abs() < alpha && (beta_star + 1.0).abs() < alpha) {
        return Err(Error::EsscherNonexistent(format!(
            "NIG Esscher beta* = {beta_star} leaves the domain |beta*|, |beta* + 1| < alpha = {alpha}"
        )));
    }
    let theta_star = beta_star - beta;
    let model = LevyModel::Nig(*p);
    let residual = esscher_residual(&model, theta_star, market.r)?;
    if !(residual.abs() <= ESSCHER_RESIDUAL_TOL) {
        return Err(Error::EsscherNonexistent(format!(
            "NIG Esscher closed form does not satisfy the martingale equation (residual {residual})"
        )));
    }
    Ok(EsscherSolution {
        theta_star,
        risk_neutral: LevyModel::Nig(p.with_beta(beta_star)?),
        target: market.r,
        residual,
    })
}

/// Closed-form Esscher measure for VG with `sigma = 1`, solving
/// `kappa(theta + 1) - kappa(theta) = 0` (martingale condition for the
/// discounted price under `S_t = S_0 exp(r t + Y_t)`).
///
/// `theta* = -beta + (-1 + sqrt(1 + beta^2 eps^2 - eps + 2 gamma eps^2)) / eps`
/// with `eps = 1 - exp(x0 / lambda)`, evaluated in a cancellation-free form.
pub fn vg_esscher(p: &VgParams) -> Result<EsscherSolution> {
    p.validate()?;
    if (p.sigma - 1.0).abs() > 1e-12 {
        return Err(Error::Unsupported(format!(
            "the VG Esscher closed form requires sigma = 1, got {}",
            p.sigma
        )));
    }
    if p.x0 == 0.0 {
        return Err(Error::Unsupported(
            "the VG Esscher closed form is degenerate at x0 = 0 (eps = 0)".into(),
        ));
    }
    let VgParams {
        lambda,
        gamma_rate,
        beta,
        ..
    } = *p;
    let b2g = beta * beta + 2.0 * gamma_rate;
    if !(b2g > 0.25) {
        return Err(Error::EsscherNonexistent(format!(
            "VG Esscher measure needs beta^2 + 2 gamma > 1/4, got {b2g}"
        )));
    }
    let eps = -(p.x0 / lambda).exp_m1();
    let z = eps * (eps * b2g - 1.0);
    if 1.0 + z < 0.0 {
        return Err(Error::EsscherNonexistent(format!(
            "VG Esscher closed form has a negative radicand ({})",
            1.0 + z
        )));
    }
    // (-1 + sqrt(1 + z)) / eps == (eps b2g - 1) / (1 + sqrt(1 + z))
    let theta_star = -beta + (eps * b2g - 1.0) / (1.0 + (1.0 + z).sqrt());
    let gamma_star = gamma_rate - beta * theta_star - 0.5 * theta_star * theta_star;
    let beta_star = beta + theta_star;
    let model = LevyModel::Vg(*p);
    let residual = esscher_residual(&model, theta_star, 0.0)?;
    if !(residual.abs() <= ESSCHER_RESIDUAL_TOL) {
        return Err(Error::EsscherNonexistent(format!(
            "VG Esscher closed form does not satisfy the martingale equation (residual {residual})"
        )));
    }
    Ok(EsscherSolution {
        theta_star,
        risk_neutral: LevyModel::Vg(VgParams::new(p.x0, lambda, gamma_star, beta_star, 1.0)?),
        target: 0.0,
        residual,
    })
}

/// `omega = ln(1 - beta nu - sigma^2 nu / 2) / nu`, so that `exp(-omega) = E[exp(Y_1)]`.
pub fn mean_correct_omega_vg(mv: &VgMeanVarianceParams) -> Result<f64> {
    mv.validate()?;
    let arg = -mv.beta * mv.nu - 0.5 * mv.sigma * mv.sigma * mv.nu;
    if !(arg > -1.0) {
        return Err(Error::MomentNonexistent(format!(
            "E[exp(Y_1)] is infinite: 1 - beta nu - sigma^2 nu / 2 = {} <= 0",
            1.0 + arg
        )));
    }
    Ok(arg.ln_1p() / mv.nu)
}

/// `omega = -mu - delta sqrt(alpha^2 - beta^2) + delta sqrt(alpha^2 - (1 + beta)^2)`.
pub fn mean_correct_omega_nig(p: &NigParams) -> Result<f64> {
    p.validate()?;
    let b1 = p.beta + 1.0;
    if !(b1.abs() <= p.alpha) {
        return Err(Error::MomentNonexistent(format!(
            "E[exp(X_1)] is infinite: |beta + 1| = {} > alpha = {}",
            b1.abs(),
            p.alpha
        )));
    }
    Ok(-p.mu - p.delta * p.gamma() + p.delta * ((p.alpha - b1) * (p.alpha + b1)).sqrt())
}

/// Mean-correcting drift for either model.
pub fn mean_correct_omega(model: &LevyModel) -> Result<f64> {
    match model {
        LevyModel::Nig(p) => mean_correct_omega_nig(p),
        LevyModel::Vg(p) => {
            let (x0, mv) = p.to_mean_variance();
            Ok(mean_correct_omega_vg(&mv)? - x0)
        }
    }
}

/// A model ready for path simulation under a chosen martingale measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskNeutralModel {
    /// Lévy part of the log-price under the pricing measure.
    pub model: LevyModel,
    pub measure: MeasureKind,
    /// Deterministic drift per year added to the Lévy part.
    pub drift_rate: f64,
    /// Mean-correcting drift (0 for Esscher).
    pub omega: f64,
    pub market: MarketData,
    pub esscher: Option<EsscherSolution>,
}

impl RiskNeutralModel {
    /// `E[exp(theta ln(S_t / S_0))] = exp(t * log_price_cumulant(theta))`.
    /// Equals `r` at `theta = 1` for every martingale measure.
    pub fn log_price_cumulant(&self, theta: f64) -> Result<f64> {
        Ok(self.drift_rate * theta + self.model.cumulant(theta)?)
    }
}

/// Builds a simulatable risk-neutral model.
pub fn risk_neutralize(
    model: impl Into<LevyModel>,
    market: &MarketData,
    measure: MeasureKind,
) -> Result<RiskNeutralModel> {
    let model = model.into();
    model.validate()?;
    market.validate()?;
    match measure {
        MeasureKind::Esscher => {
            let sol = match &model {
                LevyModel::Nig(p) => nig_esscher(p, market)?,
                LevyModel::Vg(p) => vg_esscher(p)?,
            };
            Ok(RiskNeutralModel {
                model: sol.risk_neutral,
                measure,
                drift_rate: market.r - sol.target,
                omega: 0.0,
                market: *market,
                esscher: Some(sol),
            })
        }
        MeasureKind::MeanCorrect => {
            let omega = mean_correct_omega(&model)?;
            Ok(RiskNeutralModel {
                model,
                measure,
                drift_rate: market.r + omega,
                omega,
                market: *market,
                esscher: None,
            })
        }
    }
}
