//! Payoffs, the Monte Carlo estimator and the closed-form NIG call.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy_models::{LevyModel, NigParams};
use crate::measures::{risk_neutralize, MarketData, MeasureKind, RiskNeutralModel};
use crate::sampling::{PathGrid, PathSimulator, RngStream, Scheme};
use crate::special_fn::{integrate_scaled, QuadratureSpec};
use crate::stats::RunningMoments;

/// Paths per reduction chunk. Chunks are summed in index order, so results
/// do not depend on how rayon schedules them.
const CHUNK_PATHS: usize = 4096;
const Z_95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payoff {
    EuropeanCall {
        strike: f64,
    },
    /// Fixed-strike arithmetic average over the grid dates `t_1..t_s`
    /// (`t_0` excluded, `t_s = T` included).
    AsianArithmeticCall {
        strike: f64,
    },
}

impl Payoff {
    pub fn strike(&self) -> f64 {
        match *self {
            Payoff::EuropeanCall { strike } | Payoff::AsianArithmeticCall { strike } => strike,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Payoff::EuropeanCall { .. } => "european_call",
            Payoff::AsianArithmeticCall { .. } => "asian_arithmetic_call",
        }
    }
}

/// A functional of a simulated path `S_{t_1}, ..., S_{t_s}`.
pub trait PathFunctional: Sync {
    fn evaluate(&self, path: &[f64]) -> f64;
}

impl PathFunctional for Payoff {
    fn evaluate(&self, path: &[f64]) -> f64 {
        match *self {
            Payoff::EuropeanCall { strike } => payoff_european_call(path, strike),
            Payoff::AsianArithmeticCall { strike } => payoff_asian_call(path, strike),
        }
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> PathFunctional for F {
    fn evaluate(&self, path: &[f64]) -> f64 {
        self(path)
    }
}

/// `(S_T - K)+`.
pub fn payoff_european_call(path: &[f64], strike: f64) -> f64 {
    (path[path.len() - 1] - strike).max(0.0)
}

/// `(mean(S_{t_1..t_s}) - K)+`.
pub fn payoff_asian_call(path: &[f64], strike: f64) -> f64 {
    let avg = path.iter().sum::<f64>() / path.len() as f64;
    (avg - strike).max(0.0)
}

/// Discounted Monte Carlo price with its sampling error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McResult {
    pub estimate: f64,
    /// Sample standard deviation of the discounted payoffs over `sqrt(n)`;
    /// NaN for a single path.
    pub std_error: f64,
    pub ci95_lo: f64,
    pub ci95_hi: f64,
    pub n_paths: usize,
    pub seed: u64,
}

impl McResult {
    fn from_moments(m: &RunningMoments, seed: u64) -> Self {
        let std_error = m.std_error();
        Self {
            estimate: m.mean,
            std_error,
            ci95_lo: m.mean - Z_95 * std_error,
            ci95_hi: m.mean + Z_95 * std_error,
            n_paths: m.count as usize,
            seed,
        }
    }

    pub fn contains(&self, value: f64) -> bool {
        self.ci95_lo <= value && value <= self.ci95_hi
    }

    pub fn overlaps(&self, other: &McResult) -> bool {
        self.ci95_lo <= other.ci95_hi && other.ci95_lo <= self.ci95_hi
    }
}

/// Two prices estimated on the same random streams, and their difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairedMcResult {
    pub first: McResult,
    pub second: McResult,
    /// `first - second`, path by path.
    pub difference: McResult,
}

fn check_paths(n_paths: usize) -> Result<()> {
    if n_paths == 0 {
        return Err(Error::InvalidParameter("n_paths must be at least 1".into()));
    }
    Ok(())
}

/// `e^{-rT} E[payoff]` by simulation. Path `i` uses stream `(seed, i)`.
pub fn price_mc<P: PathFunctional + ?Sized>(
    rnm: &RiskNeutralModel,
    payoff: &P,
    scheme: Scheme,
    grid: PathGrid,
    n_paths: usize,
    seed: u64,
) -> Result<McResult> {
    check_paths(n_paths)?;
    let sim = PathSimulator::new(rnm, scheme, grid)?;
    let discount = rnm.market.discount_factor();
    let n_chunks = n_paths.div_ceil(CHUNK_PATHS);
    let chunks: Vec<RunningMoments> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut path = vec![0.0; grid.n_steps];
            let mut m = RunningMoments::default();
            for i in c * CHUNK_PATHS..((c + 1) * CHUNK_PATHS).min(n_paths) {
                let mut rng = RngStream::new(seed, i as u64);
                sim.fill_path(&mut rng, &mut path);
                m.push(discount * payoff.evaluate(&path));
            }
            m
        })
        .collect();
    let total = chunks.iter().fold(RunningMoments::default(), |acc, m| acc.merge(m));
    Ok(McResult::from_moments(&total, seed))
}

/// Prices two (model, payoff) pairs on common random numbers.
///
/// Both simulations read the same stream for each path index, so for
/// schemes that use a fixed number of uniforms per step (IG subordination)
/// the paths are driven by identical noise.
#[allow(clippy::too_many_arguments)]
pub fn price_mc_paired<P: PathFunctional + ?Sized, Q: PathFunctional + ?Sized>(
    first: (&RiskNeutralModel, &P, Scheme),
    second: (&RiskNeutralModel, &Q, Scheme),
    grid: PathGrid,
    n_paths: usize,
    seed: u64,
) -> Result<PairedMcResult> {
    check_paths(n_paths)?;
    let sim_a = PathSimulator::new(first.0, first.2, grid)?;
    let sim_b = PathSimulator::new(second.0, second.2, grid)?;
    let (da, db) = (first.0.market.discount_factor(), second.0.market.discount_factor());
    let n_chunks = n_paths.div_ceil(CHUNK_PATHS);
    let chunks: Vec<[RunningMoments; 3]> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut path = vec![0.0; grid.n_steps];
            let mut acc = [RunningMoments::default(); 3];
            for i in c * CHUNK_PATHS..((c + 1) * CHUNK_PATHS).min(n_paths) {
                let mut rng = RngStream::new(seed, i as u64);
                sim_a.fill_path(&mut rng, &mut path);
                let a = da * first.1.evaluate(&path);
                let mut rng = RngStream::new(seed, i as u64);
                sim_b.fill_path(&mut rng, &mut path);
                let b = db * second.1.evaluate(&path);
                acc[0].push(a);
                acc[1].push(b);
                acc[2].push(a - b);
            }
            acc
        })
        .collect();
    let total = chunks.iter().fold([RunningMoments::default(); 3], |acc, m| {
        [acc[0].merge(&m[0]), acc[1].merge(&m[1]), acc[2].merge(&m[2])]
    });
    Ok(PairedMcResult {
        first: McResult::from_moments(&total[0], seed),
        second: McResult::from_moments(&total[1], seed),
        difference: McResult::from_moments(&total[2], seed),
    })
}

fn tail_quadrature() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-11,
        abs_tol: 1e-12,
        max_subdivisions: 4000,
        tail_truncation_mass: 1e-12,
    }
}

/// `P(X_t > x)` for the NIG process `p`, by quadrature of its density.
///
/// Integrates whichever side of the mean `x` lies on, so the absolute error
/// stays near the quadrature tolerance (about 1e-10) in both tails.
pub fn nig_tail_probability(p: &NigParams, t: f64, x: f64) -> Result<f64> {
    p.validate()?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("tail probability needs t > 0, got {t}")));
    }
    if x.is_nan() {
        return Err(Error::Domain("tail probability at NaN".into()));
    }
    if x == f64::NEG_INFINITY {
        return Ok(1.0);
    }
    if x == f64::INFINITY {
        return Ok(0.0);
    }
    // The body of the density has width ~delta t even when the variance is
    // dominated by a heavy tail; start the tail walk at that scale.
    let scale = p.variance(t).sqrt().min(p.delta * t);
    let f = |u: f64| p.density(u, t);
    let spec = tail_quadrature();
    let tail = if x <= p.mean(t) {
        1.0 - integrate_scaled(f, f64::NEG_INFINITY, x, x, scale, &spec)?
    } else {
        integrate_scaled(f, x, f64::INFINITY, x, scale, &spec)?
    };
    Ok(tail.clamp(0.0, 1.0))
}

/// Closed-form European call under a NIG risk-neutral model:
/// `C_0 = S_0 P_1 - e^{-rT} K P_2`, where `P_2 = P(X_T > k)` and `P_1` is the
/// same tail under the law tilted by `e^{x}` (`beta -> beta + 1`), with
/// `k = ln(K / S_0) - drift_rate T`.
pub fn nig_call_closed_form(rnm: &RiskNeutralModel, strike: f64) -> Result<f64> {
    let LevyModel::Nig(p) = rnm.model else {
        return Err(Error::Unsupported("closed-form call needs a NIG model".into()));
    };
    if !(strike >= 0.0) {
        return Err(Error::Domain(format!("strike must be >= 0, got {strike}")));
    }
    let m = rnm.market;
    let shifted = p.with_beta(p.beta + 1.0).map_err(|_| {
        Error::MomentNonexistent(format!(
            "closed form needs |beta + 1| < alpha, got beta = {}, alpha = {}",
            p.beta, p.alpha
        ))
    })?;
    if strike == 0.0 {
        return Ok(m.s0);
    }
    let k = (strike / m.s0).ln() - rnm.drift_rate * m.maturity;
    let p1 = nig_tail_probability(&shifted, m.maturity, k)?;
    let p2 = nig_tail_probability(&p, m.maturity, k)?;
    // E[S_T 1{X_T > k}] = S_0 e^{(drift + kappa(1)) T} P_1 = S_0 e^{rT} P_1
    let growth = (rnm.log_price_cumulant(1.0)? - m.r) * m.maturity;
    Ok(m.s0 * growth.exp() * p1 - m.discount_factor() * strike * p2)
}

/// European call under the NIG Esscher measure, in closed form.
pub fn european_call_nig_closed(p: &NigParams, market: &MarketData, strike: f64) -> Result<f64> {
    let rnm = risk_neutralize(*p, market, MeasureKind::Esscher)?;
    nig_call_closed_form(&rnm, strike)
}
