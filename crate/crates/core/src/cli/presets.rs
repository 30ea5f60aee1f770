//! Built-in experiment tables.

use crate::levy_models::{LevyModel, NigParams, VgMeanVarianceParams, VgParams};
use crate::measures::{MarketData, MeasureKind, DEFAULT_VG_ESSCHER_X0};
use crate::sampling::Scheme;

use super::config::{ConfigError, PayoffKind, RunConfig, DEFAULT_PATHS, DEFAULT_SEED, DEFAULT_STEPS};

pub const PRESET_NAMES: [&str; 3] = ["nig-table", "vg-table", "vg-lecuyer"];

/// Optional restrictions applied when expanding a preset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Selection {
    pub measure: Option<MeasureKind>,
    pub scheme: Option<Scheme>,
    pub payoff: Option<PayoffKind>,
}

/// NIG parameters fitted to daily log-returns, per day of trading.
pub fn nig_table_params() -> NigParams {
    NigParams {
        alpha: 81.6,
        beta: 3.69,
        mu: -0.000123,
        delta: 0.0103,
    }
}

/// Unit-variance, unit-clock-variance VG used for the scheme comparison table.
pub fn vg_table_params() -> VgParams {
    let mv = VgMeanVarianceParams {
        beta: -0.1436,
        sigma: 1.0,
        nu: 1.0,
    };
    VgParams {
        x0: DEFAULT_VG_ESSCHER_X0,
        ..mv.to_vg()
    }
}

pub fn vg_lecuyer_params() -> VgParams {
    VgMeanVarianceParams {
        beta: -0.1436,
        sigma: 0.12136,
        nu: 0.3,
    }
    .to_vg()
}

fn base(
    model: LevyModel,
    measure: MeasureKind,
    scheme: Scheme,
    market: MarketData,
    strikes: Vec<f64>,
    payoff: PayoffKind,
) -> RunConfig {
    RunConfig {
        model,
        measure,
        scheme,
        market,
        strikes,
        payoff,
        steps: DEFAULT_STEPS,
        n_paths: DEFAULT_PATHS,
        seed: DEFAULT_SEED,
        output: None,
    }
}

fn check_scheme(preset: &str, wanted: Option<Scheme>, allowed: &[Scheme]) -> Result<(), ConfigError> {
    match wanted {
        Some(s) if !allowed.contains(&s) => Err(ConfigError::Invalid {
            field: "scheme".into(),
            message: format!("preset `{preset}` has no `{s}` rows"),
        }),
        _ => Ok(()),
    }
}

/// Expands a preset into run configurations, one per table block.
///
/// * `nig-table`: S0 = 36, T in {1/12, 2/12}, r in {0.1, 0.05}, K = 34..=37.
///   One run emits 16 rows for a single (measure, payoff) layer, Esscher
///   European by default (those rows carry the closed form).
/// * `vg-table`: S0 = 100, T = 1, K in {95, 101, 105}, r in {0.1, 0.05},
///   Asian, every measure and scheme unless restricted: 24 rows.
/// * `vg-lecuyer`: the single mean-correcting Asian validation point.
pub fn preset_configs(name: &str, sel: Selection) -> Result<Vec<RunConfig>, ConfigError> {
    match name {
        "nig-table" => {
            check_scheme(name, sel.scheme, &[Scheme::IgSubordination])?;
            let measure = sel.measure.unwrap_or(MeasureKind::Esscher);
            let payoff = sel.payoff.unwrap_or(PayoffKind::European);
            let mut out = Vec::new();
            for maturity in [1.0 / 12.0, 2.0 / 12.0] {
                for r in [0.1, 0.05] {
                    out.push(base(
                        nig_table_params().into(),
                        measure,
                        Scheme::IgSubordination,
                        MarketData { s0: 36.0, r, maturity },
                        vec![34.0, 35.0, 36.0, 37.0],
                        payoff,
                    ));
                }
            }
            Ok(out)
        }
        "vg-table" => {
            check_scheme(name, sel.scheme, &[Scheme::Bgss, Scheme::Dg])?;
            let measures = match sel.measure {
                Some(m) => vec![m],
                None => vec![MeasureKind::Esscher, MeasureKind::MeanCorrect],
            };
            let schemes = match sel.scheme {
                Some(s) => vec![s],
                None => vec![Scheme::Bgss, Scheme::Dg],
            };
            let payoff = sel.payoff.unwrap_or(PayoffKind::Asian);
            let mut out = Vec::new();
            for r in [0.1, 0.05] {
                for &measure in &measures {
                    for &scheme in &schemes {
                        out.push(base(
                            vg_table_params().into(),
                            measure,
                            scheme,
                            MarketData {
                                s0: 100.0,
                                r,
                                maturity: 1.0,
                            },
                            vec![95.0, 101.0, 105.0],
                            payoff,
                        ));
                    }
                }
            }
            Ok(out)
        }
        "vg-lecuyer" => {
            check_scheme(name, sel.scheme, &[Scheme::Bgss, Scheme::Dg])?;
            Ok(vec![base(
                vg_lecuyer_params().into(),
                sel.measure.unwrap_or(MeasureKind::MeanCorrect),
                sel.scheme.unwrap_or(Scheme::Bgss),
                MarketData {
                    s0: 100.0,
                    r: 0.1,
                    maturity: 1.0,
                },
                vec![101.0],
                sel.payoff.unwrap_or(PayoffKind::Asian),
            )])
        }
        other => Err(ConfigError::UnknownPreset(other.to_string())),
    }
}
