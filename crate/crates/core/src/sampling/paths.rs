use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy_models::LevyModel;
use crate::measures::RiskNeutralModel;

use super::variates::{sample_gamma, sample_inverse_gaussian, sample_standard_normal};
use super::RngStream;

/// Equally spaced monitoring dates `t_i = i T / s`, `i = 1..=s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathGrid {
    pub maturity: f64,
    pub n_steps: usize,
}

impl PathGrid {
    pub fn new(maturity: f64, n_steps: usize) -> Result<Self> {
        if !(maturity > 0.0 && maturity.is_finite()) {
            return Err(Error::InvalidParameter(format!("maturity must be > 0, got {maturity}")));
        }
        if n_steps == 0 {
            return Err(Error::InvalidParameter("a path grid needs at least one step".into()));
        }
        Ok(Self { maturity, n_steps })
    }

    pub fn dt(&self) -> f64 {
        self.maturity / self.n_steps as f64
    }

    /// Date `t_i`; `t_s` is exactly the maturity.
    pub fn date(&self, i: usize) -> f64 {
        if i == self.n_steps {
            self.maturity
        } else {
            i as f64 * self.maturity / self.n_steps as f64
        }
    }

    pub fn dates(&self) -> Vec<f64> {
        (1..=self.n_steps).map(|i| self.date(i)).collect()
    }
}

/// Path simulation scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// NIG as Brownian motion with drift run on an inverse Gaussian clock.
    #[serde(alias = "ig")]
    IgSubordination,
    /// VG by Brownian-gamma sequential sampling: gamma clock, then the
    /// conditional Gaussian increment.
    Bgss,
    /// VG as the difference of two independent gamma processes.
    #[serde(alias = "difference_of_gammas")]
    Dg,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::IgSubordination => "ig_subordination",
            Scheme::Bgss => "bgss",
            Scheme::Dg => "dg",
        }
    }

    pub fn default_for(model: &LevyModel) -> Scheme {
        match model {
            LevyModel::Nig(_) => Scheme::IgSubordination,
            LevyModel::Vg(_) => Scheme::Bgss,
        }
    }

    pub fn supports(&self, model: &LevyModel) -> bool {
        matches!(
            (self, model),
            (Scheme::IgSubordination, LevyModel::Nig(_)) | (Scheme::Bgss | Scheme::Dg, LevyModel::Vg(_))
        )
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-step log-increment sampler with all constants precomputed.
#[derive(Debug, Clone, Copy)]
enum StepKind {
    /// `drift + beta z + sqrt(z) N`, `z ~ IG(ig_mean, ig_shape)`.
    Nig {
        drift: f64,
        beta: f64,
        ig_mean: f64,
        ig_shape: f64,
    },
    /// `drift + beta z + sigma sqrt(z) N`, `z ~ Gamma(shape, rate)`.
    Bgss {
        drift: f64,
        beta: f64,
        sigma: f64,
        shape: f64,
        rate: f64,
    },
    /// `drift + G+ - G-`.
    Dg {
        drift: f64,
        shape_plus: f64,
        rate_plus: f64,
        shape_minus: f64,
        rate_minus: f64,
    },
}

/// Simulates log-price paths of a [`RiskNeutralModel`] on a [`PathGrid`].
#[derive(Debug, Clone, Copy)]
pub struct PathSimulator {
    step: StepKind,
    grid: PathGrid,
    log_s0: f64,
}

impl PathSimulator {
    pub fn new(rnm: &RiskNeutralModel, scheme: Scheme, grid: PathGrid) -> Result<Self> {
        if !scheme.supports(&rnm.model) {
            return Err(Error::IncompatibleScheme {
                scheme: scheme.as_str().into(),
                model: rnm.model.name().into(),
            });
        }
        let dt = grid.dt();
        let measure_drift = rnm.drift_rate * dt;
        let step = match (scheme, rnm.model) {
            (Scheme::IgSubordination, LevyModel::Nig(p)) => {
                let scale = p.delta * dt;
                StepKind::Nig {
                    drift: p.mu * dt + measure_drift,
                    beta: p.beta,
                    ig_mean: scale / p.gamma(),
                    ig_shape: scale * scale,
                }
            }
            (Scheme::Bgss, LevyModel::Vg(p)) => StepKind::Bgss {
                drift: p.x0 * dt + measure_drift,
                beta: p.beta,
                sigma: p.sigma,
                shape: p.lambda * dt,
                rate: p.gamma_rate,
            },
            (Scheme::Dg, LevyModel::Vg(p)) => {
                let (x0, mv) = p.to_mean_variance();
                let dg = mv.gamma_difference();
                let (sp, rp) = dg.plus_shape_rate();
                let (sm, rm) = dg.minus_shape_rate();
                StepKind::Dg {
                    drift: x0 * dt + measure_drift,
                    shape_plus: sp * dt,
                    rate_plus: rp,
                    shape_minus: sm * dt,
                    rate_minus: rm,
                }
            }
            _ => unreachable!("scheme support checked above"),
        };
        Ok(Self {
            step,
            grid,
            log_s0: rnm.market.s0.ln(),
        })
    }

    pub fn grid(&self) -> &PathGrid {
        &self.grid
    }

    /// One log-price increment over a grid step.
    #[inline]
    pub fn log_increment(&self, rng: &mut RngStream) -> f64 {
        match self.step {
            StepKind::Nig {
                drift,
                beta,
                ig_mean,
                ig_shape,
            } => {
                let z = sample_inverse_gaussian(rng, ig_mean, ig_shape);
                drift + beta * z + z.sqrt() * sample_standard_normal(rng)
            }
            StepKind::Bgss {
                drift,
                beta,
                sigma,
                shape,
                rate,
            } => {
                let z = sample_gamma(rng, shape, rate);
                drift + beta * z + sigma * z.sqrt() * sample_standard_normal(rng)
            }
            StepKind::Dg {
                drift,
                shape_plus,
                rate_plus,
                shape_minus,
                rate_minus,
            } => {
                let up = sample_gamma(rng, shape_plus, rate_plus);
                let down = sample_gamma(rng, shape_minus, rate_minus);
                drift + up - down
            }
        }
    }

    /// Fills `spots[i]` with `S_{t_{i+1}}`; `spots.len()` must equal the step count.
    #[inline]
    pub fn fill_path(&self, rng: &mut RngStream, spots: &mut [f64]) {
        debug_assert_eq!(spots.len(), self.grid.n_steps);
        let mut log_s = self.log_s0;
        for s in spots.iter_mut() {
            log_s += self.log_increment(rng);
            *s = log_s.exp();
        }
    }

    pub fn simulate_path(&self, rng: &mut RngStream) -> Vec<f64> {
        let mut spots = vec![0.0; self.grid.n_steps];
        self.fill_path(rng, &mut spots);
        spots
    }
}

/// One NIG path under `rnm`, by inverse Gaussian subordination.
pub fn simulate_nig_path(rnm: &RiskNeutralModel, grid: PathGrid, rng: &mut RngStream) -> Result<Vec<f64>> {
    Ok(PathSimulator::new(rnm, Scheme::IgSubordination, grid)?.simulate_path(rng))
}

/// One VG path under `rnm`, by Brownian-gamma sequential sampling.
pub fn simulate_vg_path_bgss(rnm: &RiskNeutralModel, grid: PathGrid, rng: &mut RngStream) -> Result<Vec<f64>> {
    Ok(PathSimulator::new(rnm, Scheme::Bgss, grid)?.simulate_path(rng))
}

/// One VG path under `rnm`, as a difference of gamma processes.
pub fn simulate_vg_path_dg(rnm: &RiskNeutralModel, grid: PathGrid, rng: &mut RngStream) -> Result<Vec<f64>> {
    Ok(PathSimulator::new(rnm, Scheme::Dg, grid)?.simulate_path(rng))
}

/// A block of simulated paths, `n_paths x n_steps`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSet {
    pub grid: PathGrid,
    pub n_paths: usize,
    pub spots: Vec<f64>,
}

impl PathSet {
    pub fn path(&self, i: usize) -> &[f64] {
        let s = self.grid.n_steps;
        &self.spots[i * s..(i + 1) * s]
    }

    pub fn paths(&self) -> impl Iterator<Item = &[f64]> {
        self.spots.chunks_exact(self.grid.n_steps)
    }

    pub fn terminal_values(&self) -> Vec<f64> {
        self.paths().map(|p| p[p.len() - 1]).collect()
    }

    /// Log-increments `ln(S_{t_{j+1}} / S_{t_j})` of step `j` across paths,
    /// with `S_{t_0} = s0`.
    pub fn step_log_increments(&self, s0: f64, j: usize) -> Vec<f64> {
        self.paths()
            .map(|p| {
                let prev = if j == 0 { s0 } else { p[j - 1] };
                (p[j] / prev).ln()
            })
            .collect()
    }
}

/// Simulates `n_paths` paths; path `i` uses stream `(seed, i)`.
pub fn simulate_paths(
    rnm: &RiskNeutralModel,
    scheme: Scheme,
    grid: PathGrid,
    n_paths: usize,
    seed: u64,
) -> Result<PathSet> {
    let sim = PathSimulator::new(rnm, scheme, grid)?;
    let mut spots = vec![0.0; n_paths * grid.n_steps];
    spots.par_chunks_mut(grid.n_steps).enumerate().for_each(|(i, row)| {
        let mut rng = RngStream::new(seed, i as u64);
        sim.fill_path(&mut rng, row);
    });
    Ok(PathSet { grid, n_paths, spots })
}
