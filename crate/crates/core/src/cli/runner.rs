use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::levy_models::LevyModel;
use crate::measures::{risk_neutralize, RiskNeutralModel};
use crate::pricing::{nig_call_closed_form, price_mc, McResult, Payoff};

use super::config::{ConfigError, PayoffKind, RunConfig};

pub const CSV_HEADER: [&str; 17] = [
    "model",
    "measure",
    "scheme",
    "payoff",
    "S0",
    "K",
    "r",
    "T",
    "s",
    "n_paths",
    "seed",
    "price",
    "std_error",
    "ci_lo",
    "ci_hi",
    "closed_form",
    "status",
];

pub const STATUS_OK: &str = "ok";

/// One line of the output table. Numeric columns of a failed row are empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub model: String,
    pub measure: String,
    pub scheme: String,
    pub payoff: String,
    #[serde(rename = "S0")]
    pub s0: f64,
    #[serde(rename = "K")]
    pub strike: f64,
    pub r: f64,
    #[serde(rename = "T")]
    pub maturity: f64,
    pub s: usize,
    pub n_paths: usize,
    pub seed: u64,
    pub price: Option<f64>,
    pub std_error: Option<f64>,
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
    pub closed_form: Option<f64>,
    pub status: String,
}

impl ResultRow {
    pub fn is_ok(&self) -> bool {
        self.status == STATUS_OK
    }
}

/// Short machine-readable code for a failed row.
pub fn status_code(err: &Error) -> &'static str {
    match err {
        Error::EsscherNonexistent(_) => "esscher_nonexistent",
        Error::MomentNonexistent(_) => "moment_nonexistent",
        Error::Domain(_) => "domain_error",
        Error::InvalidParameter(_) => "invalid_parameter",
        Error::QuadratureNonConvergence { .. } => "quadrature_nonconvergence",
        Error::InvalidBracket { .. } | Error::RootNonConvergence { .. } => "root_failure",
        Error::Unsupported(_) => "unsupported",
        Error::IncompatibleScheme { .. } => "incompatible_scheme",
    }
}

fn payoff_for(kind: PayoffKind, strike: f64) -> Payoff {
    match kind {
        PayoffKind::European => Payoff::EuropeanCall { strike },
        PayoffKind::Asian => Payoff::AsianArithmeticCall { strike },
    }
}

fn price_row(cfg: &RunConfig, rnm: &RiskNeutralModel, strike: f64) -> Result<(McResult, Option<f64>), Error> {
    let payoff = payoff_for(cfg.payoff, strike);
    let mc = price_mc(rnm, &payoff, cfg.scheme, cfg.grid(), cfg.n_paths, cfg.seed)?;
    let closed = match (&cfg.model, cfg.payoff) {
        (LevyModel::Nig(_), PayoffKind::European) => Some(nig_call_closed_form(rnm, strike)?),
        _ => None,
    };
    Ok((mc, closed))
}

/// Prices every strike of `cfg`. Failures become rows with a non-ok status.
pub fn run_experiment(cfg: &RunConfig) -> Vec<ResultRow> {
    let rnm = risk_neutralize(cfg.model, &cfg.market, cfg.measure);
    cfg.strikes
        .iter()
        .map(|&strike| {
            let mut row = ResultRow {
                model: cfg.model.name().to_string(),
                measure: cfg.measure.as_str().to_string(),
                scheme: cfg.scheme.as_str().to_string(),
                payoff: payoff_for(cfg.payoff, strike).name().to_string(),
                s0: cfg.market.s0,
                strike,
                r: cfg.market.r,
                maturity: cfg.market.maturity,
                s: cfg.steps,
                n_paths: cfg.n_paths,
                seed: cfg.seed,
                price: None,
                std_error: None,
                ci_lo: None,
                ci_hi: None,
                closed_form: None,
                status: STATUS_OK.to_string(),
            };
            match rnm
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|rnm| price_row(cfg, rnm, strike))
            {
                Ok((mc, closed)) => {
                    row.price = Some(mc.estimate);
                    row.std_error = Some(mc.std_error);
                    row.ci_lo = Some(mc.ci95_lo);
                    row.ci_hi = Some(mc.ci95_hi);
                    row.closed_form = closed;
                }
                Err(e) => row.status = status_code(&e).to_string(),
            }
            row
        })
        .collect()
}

/// Runs several configurations in order and concatenates their rows.
pub fn run_all(cfgs: &[RunConfig]) -> Vec<ResultRow> {
    cfgs.iter().flat_map(run_experiment).collect()
}

/// Writes `rows` as CSV with the fixed header.
pub fn write_csv_to<W: Write>(rows: &[ResultRow], out: W) -> Result<(), ConfigError> {
    if rows.is_empty() {
        return Err(ConfigError::Invalid {
            field: "rows".into(),
            message: "refusing to write an empty table".into(),
        });
    }
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|source| ConfigError::Io {
        path: "<csv>".into(),
        source,
    })?;
    Ok(())
}

/// Writes `rows` to `path`. An empty table is an error and creates no file.
pub fn write_csv(rows: &[ResultRow], path: impl AsRef<Path>) -> Result<(), ConfigError> {
    let path = path.as_ref();
    if rows.is_empty() {
        return write_csv_to(rows, std::io::sink());
    }
    let file = std::fs::File::create(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    write_csv_to(rows, std::io::BufWriter::new(file))
}

pub fn read_csv_from<R: std::io::Read>(input: R) -> Result<Vec<ResultRow>, ConfigError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(ConfigError::Invalid {
            field: "header".into(),
            message: format!("unexpected header {header:?}"),
        });
    }
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<ResultRow>, ConfigError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_csv_from(file)
}
