use serde::Deserialize;
use thiserror::Error;

use crate::levy_models::{LevyModel, NigParams, VgMeanVarianceParams, VgParams};
use crate::measures::{MarketData, MeasureKind, DEFAULT_VG_ESSCHER_X0};
use crate::sampling::{PathGrid, Scheme};

pub const DEFAULT_STEPS: usize = 16;
pub const DEFAULT_PATHS: usize = 10_000;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid config at `{field}`: {message}")]
    Invalid { field: String, message: String },
    #[error("unknown preset `{0}` (expected nig-table, vg-table or vg-lecuyer)")]
    UnknownPreset(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

fn invalid(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Nig,
    Vg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PayoffKind {
    #[serde(alias = "european_call")]
    European,
    #[serde(alias = "asian_call", alias = "asian_arithmetic_call")]
    Asian,
}

/// One pricing job: a model under one measure and scheme, one market, and
/// a list of strikes. Every strike becomes one output row.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Model under the physical measure.
    pub model: LevyModel,
    pub measure: MeasureKind,
    pub scheme: Scheme,
    pub market: MarketData,
    pub strikes: Vec<f64>,
    pub payoff: PayoffKind,
    pub steps: usize,
    pub n_paths: usize,
    pub seed: u64,
    pub output: Option<String>,
}

impl RunConfig {
    pub fn grid(&self) -> PathGrid {
        PathGrid {
            maturity: self.market.maturity,
            n_steps: self.steps,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: ModelKind,
    params: serde_json::Map<String, serde_json::Value>,
    measure: MeasureKind,
    scheme: Option<Scheme>,
    market: RawMarket,
    strikes: Vec<f64>,
    #[serde(default = "default_payoff")]
    payoff: PayoffKind,
    #[serde(default = "default_steps", alias = "s")]
    steps: usize,
    #[serde(default = "default_paths")]
    n_paths: usize,
    #[serde(default = "default_seed")]
    seed: u64,
    output: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMarket {
    s0: f64,
    r: f64,
    #[serde(alias = "T")]
    maturity: f64,
}

fn default_payoff() -> PayoffKind {
    PayoffKind::European
}
fn default_steps() -> usize {
    DEFAULT_STEPS
}
fn default_paths() -> usize {
    DEFAULT_PATHS
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}

/// Parses and validates a JSON run configuration.
///
/// ```json
/// {
///   "model": "nig",
///   "params": {"alpha": 81.6, "beta": 3.69, "mu": -0.000123, "delta": 0.0103},
///   "measure": "esscher",
///   "market": {"s0": 36, "r": 0.1, "maturity": 0.08333333333333333},
///   "strikes": [34, 35]
/// }
/// ```
///
/// VG parameters are either `{beta, sigma, nu}` (unit-mean clock, optional
/// `x0`) or `{x0, lambda, gamma_rate, beta, sigma}`. Without an explicit
/// `x0` the Esscher measure uses `x0 = 1e-8` and the mean-correcting one `x0 = 0`.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let model = parse_model(raw.model, &raw.params, raw.measure)?;
    let scheme = raw.scheme.unwrap_or_else(|| Scheme::default_for(&model));
    if !scheme.supports(&model) {
        return Err(invalid(
            "scheme",
            format!("scheme `{scheme}` cannot simulate model `{}`", model.name()),
        ));
    }
    let market = MarketData {
        s0: raw.market.s0,
        r: raw.market.r,
        maturity: raw.market.maturity,
    };
    market.validate().map_err(|e| invalid("market", e.to_string()))?;
    if raw.strikes.is_empty() {
        return Err(invalid("strikes", "at least one strike is required"));
    }
    if let Some((i, k)) = raw
        .strikes
        .iter()
        .enumerate()
        .find(|(_, k)| !(**k >= 0.0 && k.is_finite()))
    {
        return Err(invalid(
            &format!("strikes[{i}]"),
            format!("strike must be >= 0, got {k}"),
        ));
    }
    if raw.steps == 0 {
        return Err(invalid("steps", "need at least one monitoring date"));
    }
    if raw.n_paths == 0 {
        return Err(invalid("n_paths", "need at least one path"));
    }
    Ok(RunConfig {
        model,
        measure: raw.measure,
        scheme,
        market,
        strikes: raw.strikes,
        payoff: raw.payoff,
        steps: raw.steps,
        n_paths: raw.n_paths,
        seed: raw.seed,
        output: raw.output,
    })
}

/// Replaces the measure and/or scheme of a parsed configuration and
/// re-checks scheme compatibility.
pub fn apply_overrides(
    mut cfg: RunConfig,
    measure: Option<MeasureKind>,
    scheme: Option<Scheme>,
) -> Result<RunConfig, ConfigError> {
    if let Some(m) = measure {
        cfg.measure = m;
    }
    if let Some(s) = scheme {
        if !s.supports(&cfg.model) {
            return Err(invalid(
                "scheme",
                format!("scheme `{s}` cannot simulate model `{}`", cfg.model.name()),
            ));
        }
        cfg.scheme = s;
    }
    Ok(cfg)
}

fn parse_model(
    kind: ModelKind,
    params: &serde_json::Map<String, serde_json::Value>,
    measure: MeasureKind,
) -> Result<LevyModel, ConfigError> {
    let get = |name: &str| -> Result<Option<f64>, ConfigError> {
        match params.get(name) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .ok_or_else(|| invalid(&format!("params.{name}"), format!("expected a number, got {v}"))),
        }
    };
    let need = |name: &str| -> Result<f64, ConfigError> {
        get(name)?.ok_or_else(|| invalid(&format!("params.{name}"), "missing"))
    };
    let allowed: &[&str] = match kind {
        ModelKind::Nig => &["alpha", "beta", "mu", "delta"],
        ModelKind::Vg => &["x0", "lambda", "gamma_rate", "beta", "sigma", "nu"],
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(invalid(&format!("params.{k}"), "unknown parameter"));
    }
    match kind {
        ModelKind::Nig => {
            let p = NigParams {
                alpha: need("alpha")?,
                beta: need("beta")?,
                mu: need("mu")?,
                delta: need("delta")?,
            };
            p.validate().map_err(|e| invalid("params", e.to_string()))?;
            Ok(LevyModel::Nig(p))
        }
        ModelKind::Vg => {
            let p = if let Some(nu) = get("nu")? {
                if params.contains_key("lambda") || params.contains_key("gamma_rate") {
                    return Err(invalid("params", "give either nu or (lambda, gamma_rate), not both"));
                }
                let mv = VgMeanVarianceParams {
                    beta: need("beta")?,
                    sigma: need("sigma")?,
                    nu,
                };
                mv.validate().map_err(|e| invalid("params", e.to_string()))?;
                let default_x0 = match measure {
                    MeasureKind::Esscher => DEFAULT_VG_ESSCHER_X0,
                    MeasureKind::MeanCorrect => 0.0,
                };
                VgParams {
                    x0: get("x0")?.unwrap_or(default_x0),
                    ..mv.to_vg()
                }
            } else {
                VgParams {
                    x0: need("x0")?,
                    lambda: need("lambda")?,
                    gamma_rate: need("gamma_rate")?,
                    beta: need("beta")?,
                    sigma: need("sigma")?,
                }
            };
            p.validate().map_err(|e| invalid("params", e.to_string()))?;
            Ok(LevyModel::Vg(p))
        }
    }
}
