//! Parameter types, densities and cumulants of the NIG, gamma and VG processes.

mod gamma_process;
mod nig;
mod vg;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use gamma_process::GammaParams;
pub use nig::NigParams;
pub use vg::{GammaDifference, VgMeanVarianceParams, VgParams};

/// The Lévy part of an exponential Lévy price model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum LevyModel {
    Nig(NigParams),
    Vg(VgParams),
}

impl LevyModel {
    pub fn name(&self) -> &'static str {
        match self {
            LevyModel::Nig(_) => "nig",
            LevyModel::Vg(_) => "vg",
        }
    }

    /// Real cumulant, `E[exp(theta L_t)] = exp(t kappa(theta))`.
    pub fn cumulant(&self, theta: f64) -> Result<f64> {
        match self {
            LevyModel::Nig(p) => p.cumulant(theta),
            LevyModel::Vg(p) => p.cumulant(theta),
        }
    }

    pub fn mean(&self, t: f64) -> f64 {
        match self {
            LevyModel::Nig(p) => p.mean(t),
            LevyModel::Vg(p) => p.mean(t),
        }
    }

    pub fn variance(&self, t: f64) -> f64 {
        match self {
            LevyModel::Nig(p) => p.variance(t),
            LevyModel::Vg(p) => p.variance(t),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LevyModel::Nig(p) => p.validate(),
            LevyModel::Vg(p) => p.validate(),
        }
    }
}

impl From<NigParams> for LevyModel {
    fn from(p: NigParams) -> Self {
        LevyModel::Nig(p)
    }
}

impl From<VgParams> for LevyModel {
    fn from(p: VgParams) -> Self {
        LevyModel::Vg(p)
    }
}

impl From<VgMeanVarianceParams> for LevyModel {
    fn from(p: VgMeanVarianceParams) -> Self {
        LevyModel::Vg(p.to_vg())
    }
}
